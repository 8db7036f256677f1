//! Seeded randomized checker for the packet desiderata and the module invariants,
//! with optional injected bugs as negative controls.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value as Json};

use super::dsl::{Command, Scenario, Value};
use super::run::Report;
use super::table::Table;
use super::CliError;
use crate::arithmetic::{LocalField, QuadraticCharacter, Sign, SquareClass, WhittakerDatum};
use crate::error::Result;
use crate::factors::{
    gamma_of_parameter, plancherel_expr, r_squared_parts, rewrite, rewrite_with, verify_comgamma, verify_complan,
    Backend, Rule,
};
use crate::lir::{build_induced, constituents_partition_packet, det_twist_sign, intertwining_scalar};
use crate::packets::{
    change_whittaker, enumerate_packet, group_tag, langlands_reduce, so_descend, theta_lift_member, GroupTag,
    LanglandsDatum, PacketMember,
};
use crate::parameters::{Character, ComponentGroup, Parameter, Summand, Term};
use crate::sample::{Sample, Sampler};
use crate::theta::{first_occurrence, in_theta_plus, lift_down_param, lift_up_param, symp_to_orth_params, Direction, Mode};

/// A deliberately injected bug.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// kappa_phi is replaced by the trivial character.
    KappaTrivial,
    /// Whittaker change uses eta_{phi,c} instead of eta_{phi chi_V,c}.
    WhittakerUsesPhi,
    /// The group tag ignores chi_V(c).
    TagIgnoresC,
    /// The det twist also flips the first generator.
    DetTwistExtraFlip,
    /// The Langlands core keeps the negatively shifted terms.
    CoreKeepsNegativeShift,
    /// Packet enumeration repeats its first member.
    PacketDuplicatesMember,
}

impl Mutation {
    pub const ALL: [Mutation; 6] = [
        Mutation::KappaTrivial,
        Mutation::WhittakerUsesPhi,
        Mutation::TagIgnoresC,
        Mutation::DetTwistExtraFlip,
        Mutation::CoreKeepsNegativeShift,
        Mutation::PacketDuplicatesMember,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::KappaTrivial => "kappa-trivial",
            Mutation::WhittakerUsesPhi => "whittaker-uses-phi",
            Mutation::TagIgnoresC => "tag-ignores-c",
            Mutation::DetTwistExtraFlip => "det-twist-extra-flip",
            Mutation::CoreKeepsNegativeShift => "core-keeps-negative-shift",
            Mutation::PacketDuplicatesMember => "packet-duplicates-member",
        }
    }

    pub fn parse(s: &str) -> Option<Mutation> {
        Mutation::ALL.into_iter().find(|m| m.name() == s)
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub p: u64,
    pub trials: u32,
    pub seed: u64,
    pub max_summands: usize,
    pub mutation: Option<Mutation>,
}

impl CheckConfig {
    fn echo(&self) -> String {
        let mut s = format!("check --p {} --trials {} --seed {} --max-summands {}", self.p, self.trials, self.seed, self.max_summands);
        if let Some(m) = self.mutation {
            s.push_str(&format!(" --mutation {m}"));
        }
        s
    }
}

/// A shrunk failing input: the scenario reproduces it with `llc run`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: u32,
    pub detail: String,
    pub scenario: Scenario,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: u32,
    pub failed: u32,
    /// Trials whose input did not meet the property's precondition.
    pub skipped: u32,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub config: CheckConfig,
    pub properties: Vec<PropertyResult>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.properties.iter().filter(|p| p.failed > 0).map(|p| p.name).collect()
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    /// 0 when every property passes, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            3
        }
    }

    pub fn report(&self) -> Report {
        let props: Vec<Json> = self
            .properties
            .iter()
            .map(|p| {
                json!({
                    "name": p.name,
                    "passed": p.passed,
                    "failed": p.failed,
                    "skipped": p.skipped,
                    "counterexample": p.counterexample.as_ref().map(|c| json!({
                        "trial": c.trial,
                        "detail": c.detail,
                        "scenario": c.scenario.to_string(),
                    })),
                })
            })
            .collect();
        let c = &self.config;
        let result = json!({
            "p": c.p,
            "trials": c.trials,
            "seed": c.seed,
            "max_summands": c.max_summands,
            "mutation": c.mutation.map(|m| m.name()),
            "all_passed": self.all_passed(),
            "properties": props,
        });
        let mut table = Table::new(&["property", "pass", "fail", "skip"]);
        for p in &self.properties {
            table.row(vec![p.name.to_string(), p.passed.to_string(), p.failed.to_string(), p.skipped.to_string()]);
        }
        let mut text = table.render();
        for p in &self.properties {
            if let Some(cx) = &p.counterexample {
                text.push_str(&format!("\ncounterexample for {} (trial {}): {}\n{}", p.name, cx.trial, cx.detail, cx.scenario));
            }
        }
        text.push_str(&format!("\n{}\n", if self.all_passed() { "all properties pass" } else { "some properties fail" }));
        Report { command: c.echo(), result, table: text }
    }
}

/// The functions under test, with the configured bug injected.
struct Impl {
    mutation: Option<Mutation>,
}

impl Impl {
    fn is(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    fn kappa(&self, group: &ComponentGroup) -> Character {
        if self.is(Mutation::KappaTrivial) {
            group.trivial_character()
        } else {
            group.kappa()
        }
    }

    fn tag(&self, group: &ComponentGroup, eta: &Character, chi_v: QuadraticCharacter, c: SquareClass) -> Result<GroupTag> {
        if self.is(Mutation::TagIgnoresC) {
            return Ok(GroupTag::from_sign(eta.eval(group.z())));
        }
        group_tag(group, eta, chi_v, c)
    }

    fn langlands_reduce(&self, phi: &Parameter) -> Result<LanglandsDatum> {
        let mut datum = langlands_reduce(phi)?;
        if self.is(Mutation::CoreKeepsNegativeShift) {
            let zero = num_rational::Rational64::from_integer(0);
            let mut terms = datum.core.terms().to_vec();
            terms.extend(phi.terms().iter().filter(|t| t.shift < zero).cloned());
            datum.core = Parameter::new(phi.field(), terms)?;
        }
        Ok(datum)
    }

    fn member(&self, phi: &Parameter, chi_v: QuadraticCharacter, c: SquareClass, eta: Character) -> Result<PacketMember> {
        let core = self.langlands_reduce(phi)?.core;
        let mut m = PacketMember::orth(&core, chi_v, c, eta)?;
        m.tag = self.tag(&m.group(), &m.eta, chi_v, c)?;
        m.phi = phi.clone();
        Ok(m)
    }

    fn enumerate_packet(&self, phi: &Parameter, chi_v: QuadraticCharacter, c: SquareClass) -> Result<Vec<PacketMember>> {
        let group = ComponentGroup::of(&self.langlands_reduce(phi)?.core);
        let mut out = group.characters().map(|eta| self.member(phi, chi_v, c, eta)).collect::<Result<Vec<_>>>()?;
        out.sort_by_key(|m| m.eta.bits());
        if self.is(Mutation::PacketDuplicatesMember) {
            out.push(out[0].clone());
        }
        Ok(out)
    }

    fn change_whittaker(&self, m: &PacketMember, c1: SquareClass, c2: SquareClass) -> Result<Character> {
        if self.is(Mutation::WhittakerUsesPhi) {
            return Ok(m.eta.times(&m.group().eta(c2.try_mul(c1)?)?));
        }
        change_whittaker(m, c1, c2)
    }

    fn det_twist(&self, m: &PacketMember) -> Result<PacketMember> {
        let mut eta = m.eta.times(&self.kappa(&m.group()));
        if self.is(Mutation::DetTwistExtraFlip) && eta.rank() > 0 {
            eta = eta.times(&Character::from_mask(eta.rank(), 1));
        }
        self.member(&m.phi, m.chi_v, m.c, eta)
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail { detail: String, inspect: Command },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Input {
    Tempered,
    Shifted,
}

type Run = fn(&Impl, &Sample, &mut Sampler) -> Result<Outcome>;

struct Property {
    name: &'static str,
    input: Input,
    run: Run,
}

fn cmd(name: &str, positional: Vec<Value>, options: Vec<(&str, Value)>) -> Command {
    Command {
        name: name.to_string(),
        positional,
        options: options.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    }
}

fn phi_arg() -> Value {
    Value::Name("phi".into())
}

fn packet_cmd(c: SquareClass) -> Command {
    cmd("packet", vec![phi_arg()], vec![("c", Value::Class(c))])
}

fn theta_cmd(eta: &Character, c: SquareClass) -> Command {
    cmd(
        "theta",
        vec![phi_arg()],
        vec![("eta", Value::Bits(eta.bits())), ("dir", Value::Word("up".into())), ("c", Value::Class(c))],
    )
}

fn lir_cmd(eta0: &Character, tau: &Summand, c: SquareClass) -> Command {
    cmd(
        "lir",
        vec![phi_arg()],
        vec![("eta0", Value::Bits(eta0.bits())), ("tau", Value::Atom(tau.clone())), ("c", Value::Class(c))],
    )
}

fn factors_cmd(kind: &str, options: Vec<(&str, Value)>) -> Command {
    cmd("factors", vec![Value::Word(kind.into()), phi_arg()], options)
}

fn fail(detail: String, inspect: Command) -> Result<Outcome> {
    Ok(Outcome::Fail { detail, inspect })
}

fn verdict(ok: bool, detail: impl FnOnce() -> String, inspect: Command) -> Result<Outcome> {
    if ok {
        Ok(Outcome::Pass)
    } else {
        fail(detail(), inspect)
    }
}

fn random_eta(s: &Sample, aux: &mut Sampler) -> Character {
    aux.character(&ComponentGroup::of(&s.phi))
}

fn packet_size(imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let c = aux.class();
    let members = imp.enumerate_packet(&s.phi, s.chi_v, c)?;
    let rank = ComponentGroup::of(&s.phi).rank();
    let distinct: BTreeSet<String> = members.iter().map(|m| m.eta.bits()).collect();
    let expected = 1usize << rank;
    verdict(
        members.len() == expected && distinct.len() == expected,
        || format!("packet has {} members ({} distinct), expected 2^{rank}", members.len(), distinct.len()),
        packet_cmd(c),
    )
}

fn whittaker_group_action(imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let eta = random_eta(s, aux);
    let (c1, c2, c3) = (aux.class(), aux.class(), aux.class());
    let m1 = imp.member(&s.phi, s.chi_v, c1, eta)?;
    let e2 = imp.change_whittaker(&m1, c1, c2)?;
    let m2 = imp.member(&s.phi, s.chi_v, c2, e2)?;
    let composed = imp.change_whittaker(&m2, c2, c3)?;
    let direct = imp.change_whittaker(&m1, c1, c3)?;
    let identity = imp.change_whittaker(&m1, c1, c1)?;
    verdict(
        composed == direct && identity == eta,
        || format!("eta {eta}: {c1}->{c2}->{c3} gives {composed}, {c1}->{c3} gives {direct}, {c1}->{c1} gives {identity}"),
        packet_cmd(c1),
    )
}

fn whittaker_matches_theta(imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let group = ComponentGroup::of(&s.phi);
    let plus: Vec<Character> = group.characters().filter(|e| in_theta_plus(&group, e)).collect();
    let eta = plus[aux.below(plus.len() as u32) as usize];
    let (c1, c2) = (aux.class(), aux.class());
    let m1 = imp.member(&s.phi, s.chi_v, c1, eta)?;
    let m2 = imp.member(&s.phi, s.chi_v, c2, imp.change_whittaker(&m1, c1, c2)?)?;
    if !m2.flags.in_theta_plus {
        return fail(format!("changing the datum {c1}->{c2} moves eta {eta} out of the theta-plus half"), theta_cmd(&eta, c1));
    }
    let l1 = theta_lift_member(&m1, Direction::OrthToSympUp)?;
    let l2 = theta_lift_member(&m2, Direction::OrthToSympUp)?;
    let expected = l1.eta.times(&l1.group().eta(c2.try_mul(c1)?)?);
    verdict(
        l2.eta == expected,
        || format!("eta {eta}: lift after datum change {c1}->{c2} is {}, expected {expected}", l2.eta),
        theta_cmd(&eta, c1),
    )
}

fn tag_stable_under_change(imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let eta = random_eta(s, aux);
    let c1 = aux.class();
    let m1 = imp.member(&s.phi, s.chi_v, c1, eta)?;
    let group = m1.group();
    for c2 in s.phi.field().classes() {
        let e2 = imp.change_whittaker(&m1, c1, c2)?;
        let t2 = imp.tag(&group, &e2, s.chi_v, c2)?;
        if t2 != m1.tag {
            return fail(format!("eta {eta} on {} for datum {c1} becomes {e2} on {t2} for datum {c2}", m1.tag), packet_cmd(c2));
        }
    }
    Ok(Outcome::Pass)
}

fn generic_on_datum_group(imp: &Impl, s: &Sample, _aux: &mut Sampler) -> Result<Outcome> {
    let group = ComponentGroup::of(&s.phi);
    for c in s.phi.field().classes() {
        let m = imp.member(&s.phi, s.chi_v, c, group.trivial_character())?;
        let expected = if WhittakerDatum::new(c).attaches_to_plus(s.chi_v.d)? { GroupTag::Vplus } else { GroupTag::Vminus };
        if m.tag != expected {
            return fail(format!("generic member for datum {c} is tagged {}, the datum lives on {expected}", m.tag), packet_cmd(c));
        }
    }
    Ok(Outcome::Pass)
}

fn det_twist_involution(imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let eta = random_eta(s, aux);
    let c = aux.class();
    let m = imp.member(&s.phi, s.chi_v, c, eta)?;
    let t = imp.det_twist(&m)?;
    let tt = imp.det_twist(&t)?;
    verdict(
        tt.eta == m.eta && t.tag == m.tag,
        || format!("eta {eta} on {} twists to {} on {} and back to {}", m.tag, t.eta, t.tag, tt.eta),
        packet_cmd(c),
    )
}

fn independent_kappa(phi: &Parameter) -> Character {
    let signs: Vec<Sign> = ComponentGroup::of(phi).generators().iter().map(|g| Sign::from_parity(g.dim() % 2 == 1)).collect();
    Character::from_signs(&signs)
}

fn det_twist_fixed_points(imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let eta = random_eta(s, aux);
    let c = aux.class();
    let m = imp.member(&s.phi, s.chi_v, c, eta)?;
    let fixed = imp.det_twist(&m)?.eta == m.eta;
    let all_even = independent_kappa(&s.phi).is_trivial();
    verdict(
        fixed == all_even,
        || format!("eta {eta}: fixed by the det twist = {fixed}, but every orthogonal summand even-dimensional = {all_even}"),
        packet_cmd(c),
    )
}

fn det_twist_generic(imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let c = aux.class();
    let m = imp.member(&s.phi, s.chi_v, c, ComponentGroup::of(&s.phi).trivial_character())?;
    let t = imp.det_twist(&m)?;
    let kappa = independent_kappa(&s.phi);
    verdict(t.eta == kappa, || format!("det twist of the generic member is {}, expected kappa = {kappa}", t.eta), packet_cmd(c))
}

fn langlands_core(imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let c = aux.class();
    let datum = imp.langlands_reduce(&s.phi)?;
    let back = datum.reassemble()?;
    if back != s.phi || !datum.core.is_tempered() {
        return fail(
            format!("core {} (tempered {}) reassembles to {back}", datum.core, datum.core.is_tempered()),
            packet_cmd(c),
        );
    }
    let labels = |ms: Vec<PacketMember>| ms.into_iter().map(|m| (m.eta.bits(), m.tag)).collect::<Vec<_>>();
    let whole = labels(imp.enumerate_packet(&s.phi, s.chi_v, c)?);
    let core = labels(imp.enumerate_packet(&datum.core, s.chi_v, c)?);
    verdict(whole == core, || "packet labels differ from those of the tempered core".into(), packet_cmd(c))
}

fn conservation(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let c = aux.class();
    for eta in ComponentGroup::of(&s.phi).characters() {
        let rec = first_occurrence(&s.phi, &eta)?;
        if !rec.is_conserved() {
            return fail(format!("eta {eta}: {} + {} != 4n = {}", rec.m_pi, rec.m_pi_det, 4 * rec.n), theta_cmd(&eta, c));
        }
    }
    Ok(Outcome::Pass)
}

fn theta_params_round_trip(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let c = aux.class();
    let eta = ComponentGroup::of(&s.phi).trivial_character();
    let plus = lift_up_param(&s.phi, s.chi_v)?;
    let back = symp_to_orth_params(&plus, s.chi_v, Mode::Down)?;
    if back != s.phi {
        return fail(format!("up then down gives {back}"), theta_cmd(&eta, c));
    }
    if s.phi.contains_trivial() > 0 {
        let minus = lift_down_param(&s.phi, s.chi_v)?;
        let back = symp_to_orth_params(&minus, s.chi_v, Mode::Up)?;
        if back != s.phi {
            return fail(format!("down then up gives {back}"), theta_cmd(&eta, c));
        }
    }
    Ok(Outcome::Pass)
}

fn symp_packet_size(phi_plus: &Parameter) -> usize {
    let group = ComponentGroup::of(phi_plus);
    group.characters().filter(|e| !e.eval(group.z()).is_minus()).count()
}

fn theta_plus_bijection(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let c = aux.class();
    let group = ComponentGroup::of(&s.phi);
    let mut images = BTreeSet::new();
    let mut count = 0;
    for eta in group.characters().filter(|e| in_theta_plus(&group, e)) {
        count += 1;
        let m = PacketMember::orth(&s.phi, s.chi_v, c, eta)?;
        let lift = theta_lift_member(&m, Direction::OrthToSympUp)?;
        let back = theta_lift_member(&lift, Direction::SympToOrthDown)?;
        if back.eta != eta || back.tag != m.tag {
            return fail(format!("eta {eta} on {} comes back as {} on {}", m.tag, back.eta, back.tag), theta_cmd(&eta, c));
        }
        images.insert(lift.eta.bits());
    }
    let target = symp_packet_size(&lift_up_param(&s.phi, s.chi_v)?);
    verdict(
        images.len() == count && count == target,
        || format!("{count} theta-plus members lift to {} distinct members of a packet of size {target}", images.len()),
        packet_cmd(c),
    )
}

fn theta_counting(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let c = aux.class();
    let ones = s.phi.contains_trivial();
    if ones == 1 {
        return Ok(Outcome::Skip);
    }
    let orth = 1usize << ComponentGroup::of(&s.phi).rank();
    let symp = symp_packet_size(&lift_up_param(&s.phi, s.chi_v)?);
    let expected = if ones >= 2 { 2 * symp } else { symp };
    verdict(orth == expected, || format!("packet of size {orth}, symplectic packet of size {symp}"), packet_cmd(c))
}

fn lir_count(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let tau = aux.tau_for(&s.phi);
    let eta0 = random_eta(s, aux);
    let c = aux.class();
    let m0 = PacketMember::orth(&s.phi, s.chi_v, c, eta0)?;
    let induced = build_induced(&tau, &m0)?;
    let expected = if tau.is_orthogonal() && s.phi.contains(&tau) == 0 { 2 } else { 1 };
    if induced.constituents.len() != expected {
        return fail(format!("{} constituents, expected {expected}", induced.constituents.len()), lir_cmd(&eta0, &tau, c));
    }
    if tau.is_orthogonal() {
        for eta in &induced.constituents {
            for c2 in s.phi.field().classes() {
                intertwining_scalar(&induced, eta, WhittakerDatum::new(c2))?;
            }
        }
    }
    Ok(Outcome::Pass)
}

fn lir_det_twist(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let tau = aux.orthogonal_tau();
    let eta0 = random_eta(s, aux);
    let c = aux.class();
    let m0 = PacketMember::orth(&s.phi, s.chi_v, c, eta0)?;
    let report = det_twist_sign(&build_induced(&tau, &m0)?)?;
    let sign = Sign::from_parity(tau.dim() % 2 == 1);
    verdict(
        report.consistent && report.sign == sign,
        || format!("det twist report sign {} consistent {}", report.sign, report.consistent),
        lir_cmd(&eta0, &tau, c),
    )
}

fn lir_partition(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let tau = aux.tau_for(&s.phi);
    let c = aux.class();
    let members = enumerate_packet(&s.phi, s.chi_v, WhittakerDatum::new(c))?;
    let eta0 = members[0].eta;
    verdict(
        constituents_partition_packet(&tau, &members)?,
        || "constituents do not partition the packet".into(),
        lir_cmd(&eta0, &tau, c),
    )
}

fn comgamma(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let chi = aux.quadratic_character();
    verdict(
        verify_comgamma(&s.phi, s.chi_v, chi)?,
        || format!("gamma quotient for chi = {} is not gamma(s, chi chi_V)", chi.d),
        factors_cmd("comgamma", vec![("chi", Value::Class(chi.d))]),
    )
}

fn complan(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let tau = aux.tau_for(&s.phi);
    verdict(
        verify_complan(&tau, &s.phi, s.chi_v)?,
        || format!("Plancherel quotient for {} is not the gamma pair", tau.atom()),
        factors_cmd("complan", vec![("tau", Value::Atom(tau.clone()))]),
    )
}

fn r_squared(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let tau = aux.orthogonal_tau();
    let mut forms = Vec::new();
    for backend in Backend::ALL {
        forms.push(rewrite(&r_squared_parts(&tau, &s.phi, s.chi_v, backend)?.identity().lhs)?);
    }
    verdict(
        forms.iter().all(|f| f.is_unit()),
        || format!("normal forms {} and {}", forms[0], forms[1]),
        factors_cmd("rsq", vec![("tau", Value::Atom(tau.clone()))]),
    )
}

fn so_descent(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let c = aux.class();
    let r = so_descend(&s.phi, s.chi_v, WhittakerDatum::new(c))?;
    verdict(
        r.bijective && r.square_commutes && r.orbits.len() as u64 == r.s_plus_order,
        || format!("{} orbits, |S+| = {}, square commutes {}", r.orbits.len(), r.s_plus_order, r.square_commutes),
        cmd("so", vec![phi_arg()], vec![("c", Value::Class(c))]),
    )
}

fn rewrite_confluence(_imp: &Impl, s: &Sample, aux: &mut Sampler) -> Result<Outcome> {
    let field = s.phi.field();
    let chi = aux.quadratic_character();
    let tau = aux.tau_for(&s.phi);
    let expr = gamma_of_parameter(&s.phi, chi, field.one()).over(&plancherel_expr(&tau, &s.phi, field.minus_one()));
    let normal = rewrite(&expr)?;
    if rewrite(&normal)? != normal {
        return fail("normal form is not idempotent".into(), factors_cmd("gamma", vec![("chi", Value::Class(chi.d))]));
    }
    for _ in 0..3 {
        let mut order = Rule::ALL.to_vec();
        for i in (1..order.len()).rev() {
            order.swap(i, aux.below(i as u32 + 1) as usize);
        }
        let other = rewrite_with(&expr, &order)?;
        if other != normal {
            return fail(format!("order {order:?} gives {other}, default gives {normal}"), factors_cmd("gamma", vec![("chi", Value::Class(chi.d))]));
        }
    }
    Ok(Outcome::Pass)
}

fn battery() -> Vec<Property> {
    use Input::*;
    let p = |name, input, run: Run| Property { name, input, run };
    vec![
        p("packet_size_is_two_to_the_rank", Shifted, packet_size),
        p("whittaker_change_is_a_group_action", Tempered, whittaker_group_action),
        p("whittaker_change_commutes_with_theta", Tempered, whittaker_matches_theta),
        p("group_tag_stable_under_whittaker_change", Tempered, tag_stable_under_change),
        p("generic_member_lives_on_the_datum_group", Tempered, generic_on_datum_group),
        p("det_twist_is_an_involution_within_a_group", Tempered, det_twist_involution),
        p("det_twist_fixed_iff_no_odd_orthogonal_summand", Tempered, det_twist_fixed_points),
        p("det_twist_swaps_generic_members", Tempered, det_twist_generic),
        p("langlands_core_reassembles_and_labels_packet", Shifted, langlands_core),
        p("first_occurrences_are_conserved", Tempered, conservation),
        p("theta_parameters_round_trip", Tempered, theta_params_round_trip),
        p("theta_plus_half_lifts_bijectively", Tempered, theta_plus_bijection),
        p("theta_packet_counting", Tempered, theta_counting),
        p("induced_constituent_count", Tempered, lir_count),
        p("induced_det_twist_consistency", Tempered, lir_det_twist),
        p("induced_constituents_partition_packet", Tempered, lir_partition),
        p("gamma_transfer_identity", Tempered, comgamma),
        p("plancherel_transfer_identity", Tempered, complan),
        p("normalized_operator_squares_to_one", Tempered, r_squared),
        p("so_orbits_match_s_plus_characters", Tempered, so_descent),
        p("rewrite_normal_form_is_order_independent", Tempered, rewrite_confluence),
    ]
}

/// Names of all checked properties, in report order.
pub fn property_names() -> Vec<&'static str> {
    battery().iter().map(|p| p.name).collect()
}

fn aux_seed(seed: u64, trial: u32, property: usize) -> u64 {
    let mut z = seed ^ (u64::from(trial) << 16) ^ (property as u64) ^ 0x9e37_79b9_7f4a_7c15;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn evaluate(imp: &Impl, prop: &Property, sample: &Sample, seed: u64, max_summands: usize) -> Outcome {
    let field = sample.phi.field();
    let mut aux = Sampler::new(field, seed, max_summands).with_prefix("T");
    match (prop.run)(imp, sample, &mut aux) {
        Ok(o) => o,
        Err(e) => Outcome::Fail { detail: format!("error {}: {e}", e.code()), inspect: packet_cmd(field.one()) },
    }
}

/// Parameters obtained from phi by dropping one summand (with its dual partner) or lowering a multiplicity.
fn shrink_candidates(phi: &Parameter) -> Vec<Parameter> {
    let zero = num_rational::Rational64::from_integer(0);
    let terms = phi.terms();
    let mut out = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        if t.shift < zero {
            continue;
        }
        let partner = |u: &Term| u.summand == t.summand && u.shift == -t.shift && t.shift != zero;
        let dropped: Vec<Term> = terms.iter().enumerate().filter(|(j, u)| *j != i && !partner(u)).map(|(_, u)| u.clone()).collect();
        out.push(dropped);
        let step = if t.summand.sd_type() == crate::parameters::SdType::Symplectic { 2 } else { 1 };
        if t.mult > step {
            let lowered: Vec<Term> = terms
                .iter()
                .map(|u| if u == t || partner(u) { Term { mult: u.mult - step, ..u.clone() } } else { u.clone() })
                .collect();
            out.push(lowered);
        }
    }
    out.into_iter().filter_map(|ts| Parameter::new(phi.field(), ts).ok()).collect()
}

fn shrink(imp: &Impl, prop: &Property, sample: &Sample, seed: u64, max_summands: usize, first: (String, Command)) -> (Sample, String, Command) {
    let mut best = sample.clone();
    let (mut detail, mut inspect) = first;
    loop {
        let mut improved = false;
        for phi in shrink_candidates(&best.phi) {
            let chi_v = QuadraticCharacter::new(phi.det());
            if phi.check_orthogonal(chi_v).is_err() || (prop.input == Input::Tempered && !phi.is_tempered()) {
                continue;
            }
            let cand = Sample { phi, chi_v };
            if let Outcome::Fail { detail: d, inspect: i } = evaluate(imp, prop, &cand, seed, max_summands) {
                best = cand;
                detail = d;
                inspect = i;
                improved = true;
                break;
            }
        }
        if !improved {
            return (best, detail, inspect);
        }
    }
}

/// Runs the full property battery on `trials` seeded random parameters.
pub fn check_desiderata(config: &CheckConfig) -> std::result::Result<CheckReport, CliError> {
    if config.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let field = LocalField::new(config.p)?;
    let imp = Impl { mutation: config.mutation };
    let props = battery();
    let mut results: Vec<PropertyResult> = props
        .iter()
        .map(|p| PropertyResult { name: p.name, passed: 0, failed: 0, skipped: 0, counterexample: None })
        .collect();
    let mut sampler = Sampler::new(field, config.seed, config.max_summands);
    for trial in 0..config.trials {
        let tempered = sampler.tempered();
        let shifted = sampler.nontempered();
        for (k, prop) in props.iter().enumerate() {
            let sample = if prop.input == Input::Tempered { &tempered } else { &shifted };
            let seed = aux_seed(config.seed, trial, k);
            let r = &mut results[k];
            match evaluate(&imp, prop, sample, seed, config.max_summands) {
                Outcome::Pass => r.passed += 1,
                Outcome::Skip => r.skipped += 1,
                Outcome::Fail { detail, inspect } => {
                    r.failed += 1;
                    if r.counterexample.is_none() {
                        let (small, detail, inspect) = shrink(&imp, prop, sample, seed, config.max_summands, (detail, inspect));
                        let scenario = Scenario {
                            field,
                            chi_v: small.chi_v.d,
                            params: vec![("phi".into(), small.phi)],
                            command: inspect,
                        };
                        r.counterexample = Some(Counterexample { trial, detail, scenario });
                    }
                }
            }
        }
    }
    Ok(CheckReport { config: config.clone(), properties: results })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(mutation: Option<Mutation>) -> CheckConfig {
        CheckConfig { p: 5, trials: 60, seed: 42, max_summands: 5, mutation }
    }

    #[test]
    fn clean_run_passes() {
        let r = check_desiderata(&config(None)).unwrap();
        assert!(r.all_passed(), "{}", r.report().table);
    }

    #[test]
    fn every_mutation_is_caught() {
        for m in Mutation::ALL {
            let r = check_desiderata(&config(Some(m))).unwrap();
            assert!(!r.all_passed(), "{m} not caught");
            assert_eq!(r.exit_code(), 3);
        }
    }

    #[test]
    fn zero_trials_is_usage_error() {
        let mut c = config(None);
        c.trials = 0;
        assert_eq!(check_desiderata(&c).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn deterministic_json() {
        let a = check_desiderata(&config(Some(Mutation::KappaTrivial))).unwrap().report().render(super::super::Format::Json);
        let b = check_desiderata(&config(Some(Mutation::KappaTrivial))).unwrap().report().render(super::super::Format::Json);
        assert_eq!(a, b);
    }
}
