//! Dispatch of scenario commands to the library, with JSON and table reports.

use serde_json::{json, Value as Json};

use super::dsl::{Scenario, Value};
use super::table::{pairs, Table};
use super::CliError;
use crate::arithmetic::{classify_space, hilbert, QuadraticCharacter, Sign, SquareClass, WhittakerDatum};
use crate::factors::{
    gamma_of_parameter, normalizing_factor, plancherel_expr, r_squared_parts, rewrite, theta_scalar, verify_comgamma,
    verify_complan, Backend, FactorExpr,
};
use crate::packets::{
    contragredient_symp, enumerate_packet, so_descend, theta_lift_member, GroupTag, PacketMember,
    Side,
};
use crate::lir::{build_induced, det_twist_sign, intertwining_scalar};
use crate::parameters::{embed_component, ComponentGroup, Parameter, Summand};
use crate::theta::{first_occurrence, theta_nonvanishing, Direction};

/// Output format of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "table" => Some(Format::Table),
            _ => None,
        }
    }
}

/// The outcome of one command, renderable in either format.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub result: Json,
    pub table: String,
}

impl Report {
    pub fn to_json(&self) -> Json {
        json!({ "schema": 1, "command": self.command, "result": self.result })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Table => self.table.clone(),
        }
    }
}

fn sign_json(s: Sign) -> Json {
    json!(s.value())
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

struct Ctx<'a> {
    scenario: &'a Scenario,
    chi_v: QuadraticCharacter,
}

impl<'a> Ctx<'a> {
    fn param(&self, v: &Value) -> &'a Parameter {
        match v {
            Value::Name(n) => self.scenario.param(n).expect("names are resolved by the parser"),
            _ => unreachable!("positional kind is Name"),
        }
    }

    fn class_opt(&self, name: &str) -> SquareClass {
        self.scenario.command.opt(name).and_then(Value::class).unwrap_or(self.scenario.field.one())
    }

    fn bits(&self, name: &str) -> String {
        match self.scenario.command.opt(name) {
            Some(Value::Bits(b)) => b.clone(),
            _ => String::new(),
        }
    }

    fn atom(&self, name: &str) -> Result<Summand, CliError> {
        match self.scenario.command.opt(name) {
            Some(Value::Atom(s)) => Ok(s.clone()),
            _ => Err(usage(format!("`factors {}` needs --{name}", self.factor_kind()))),
        }
    }

    fn factor_kind(&self) -> &str {
        match self.scenario.command.positional.first() {
            Some(Value::Word(w)) => w,
            _ => "",
        }
    }

    fn side(&self, default: Side) -> Side {
        match self.scenario.command.word("side") {
            Some("orth") => Side::Orth,
            Some("sp") => Side::Symp,
            _ => default,
        }
    }
}

/// Runs the command of a scenario.
pub fn run_command(scenario: &Scenario) -> Result<Report, CliError> {
    let ctx = Ctx { scenario, chi_v: QuadraticCharacter::new(scenario.chi_v) };
    let cmd = &scenario.command;
    let (result, table) = match cmd.name.as_str() {
        "hilbert" => run_hilbert(&ctx)?,
        "space" => run_space(&ctx)?,
        "packet" => run_packet(&ctx)?,
        "theta" => run_theta(&ctx)?,
        "lir" => run_lir(&ctx)?,
        "factors" => run_factors(&ctx)?,
        "so" => run_so(&ctx)?,
        "embed" => run_embed(&ctx)?,
        "contra" => run_contra(&ctx)?,
        other => return Err(usage(format!("unknown command `{other}`"))),
    };
    Ok(Report { command: cmd.to_string(), result, table })
}

type Out = Result<(Json, String), CliError>;

fn run_hilbert(ctx: &Ctx) -> Out {
    let p = &ctx.scenario.command.positional;
    let (a, b) = (p[0].class().expect("class"), p[1].class().expect("class"));
    let s = hilbert(a, b)?;
    Ok((json!({ "a": a.to_string(), "b": b.to_string(), "symbol": sign_json(s) }), format!("{s}\n")))
}

fn run_space(ctx: &Ctx) -> Out {
    let p = &ctx.scenario.command.positional;
    let m = match p[0] {
        Value::Int(m) if m >= 1 => m as u32,
        Value::Int(m) => return Err(crate::Error::DegenerateInput(format!("half dimension {m}")).into()),
        _ => unreachable!("positional kind is Int"),
    };
    let d = p[1].class().expect("class");
    let eps = match p[2] {
        Value::Int(1) => Sign::Plus,
        Value::Int(-1) => Sign::Minus,
        _ => return Err(usage("epsilon must be 1 or -1")),
    };
    let space = classify_space(ctx.scenario.field, m, d, eps)?;
    let companion = space.companion().ok();
    let describe = |s: &crate::arithmetic::OrthogonalSpace| {
        json!({
            "half_dim": s.half_dim(),
            "disc": s.disc().to_string(),
            "epsilon": sign_json(s.epsilon()),
            "witt_index": s.witt_index(),
            "kernel": kernel_name(s),
            "quasi_split": s.is_quasi_split(),
        })
    };
    let mut result = describe(&space);
    result["companion"] = companion.as_ref().map(describe).unwrap_or(Json::Null);
    let table = pairs(&[
        ("space", space.to_string()),
        ("witt index", space.witt_index().to_string()),
        ("kernel", kernel_name(&space)),
        ("quasi-split", space.is_quasi_split().to_string()),
        ("companion", companion.map(|c| c.to_string()).unwrap_or_else(|| "none".into())),
    ]);
    Ok((result, table))
}

fn kernel_name(s: &crate::arithmetic::OrthogonalSpace) -> String {
    match s.kernel() {
        crate::arithmetic::AnisoKernel::Zero => "zero".into(),
        crate::arithmetic::AnisoKernel::Plane { d, c } => format!("plane({d},{c})"),
        crate::arithmetic::AnisoKernel::Quaternion => "quaternion".into(),
    }
}

fn generic_labels(m: &PacketMember) -> Vec<&'static str> {
    let mut out = Vec::new();
    if m.flags.generic_plus {
        out.push("plus");
    }
    if m.flags.generic_minus {
        out.push("minus");
    }
    out
}

fn run_packet(ctx: &Ctx) -> Out {
    let phi = ctx.param(&ctx.scenario.command.positional[0]);
    let c = ctx.class_opt("c");
    let members = enumerate_packet(phi, ctx.chi_v, WhittakerDatum::new(c))?;
    let group = ComponentGroup::of(phi);
    let mut table = Table::new(&["eta", "group", "generic", "theta+"]);
    let rows: Vec<Json> = members
        .iter()
        .map(|m| {
            table.row(vec![m.eta.bits(), m.tag.to_string(), generic_labels(m).join(","), m.flags.in_theta_plus.to_string()]);
            json!({
                "eta_bits": m.eta.bits(),
                "group": m.tag.to_string(),
                "generic": generic_labels(m),
                "theta_plus": m.flags.in_theta_plus,
            })
        })
        .collect();
    let head = pairs(&[("phi", phi.to_string()), ("c", c.to_string()), ("generators", group.labels().join(" "))]);
    let result = json!({
        "phi": phi.to_string(),
        "c": c.to_string(),
        "generators": group.labels(),
        "members": rows,
    });
    Ok((result, format!("{head}{}", table.render())))
}

fn member_json(m: &PacketMember) -> Json {
    json!({
        "phi": m.phi.to_string(),
        "eta_bits": m.eta.bits(),
        "group": m.tag.to_string(),
        "side": match m.side { Side::Orth => "orth", Side::Symp => "sp" },
    })
}

fn run_theta(ctx: &Ctx) -> Out {
    let cmd = &ctx.scenario.command;
    let phi = ctx.param(&cmd.positional[0]);
    let c = ctx.class_opt("c");
    let up = cmd.word("dir") == Some("up");
    let side = ctx.side(Side::Orth);
    let group = ComponentGroup::of(phi);
    let eta = group.parse_character(&ctx.bits("eta"))?;
    let (member, direction) = match side {
        Side::Orth => {
            let m = PacketMember::orth(phi, ctx.chi_v, c, eta)?;
            (m, if up { Direction::OrthToSympUp } else { Direction::OrthToSympDown })
        }
        Side::Symp => {
            let tower = if cmd.word("tower") == Some("minus") { GroupTag::Vminus } else { GroupTag::Vplus };
            let m = PacketMember::symp(phi, ctx.chi_v, c, eta, tower)?;
            (m, if up { Direction::SympToOrthUp } else { Direction::SympToOrthDown })
        }
    };
    let nonvanishing = theta_nonvanishing(phi, ctx.chi_v, &member.eta, direction)?;
    let target = theta_lift_member(&member, direction)?;
    let mut result = json!({
        "direction": direction.to_string(),
        "source": member_json(&member),
        "target": member_json(&target),
        "nonvanishing": nonvanishing,
    });
    let mut rows = vec![
        ("direction", direction.to_string()),
        ("source", format!("{} eta={} on {}", phi, member.eta, member.tag)),
        ("target", format!("{} eta={} on {}", target.phi, target.eta, target.tag)),
    ];
    if side == Side::Orth {
        let rec = first_occurrence(phi, &member.eta)?;
        result["occurrence"] = json!({ "n": rec.n, "m_pi": rec.m_pi, "m_pi_det": rec.m_pi_det, "conserved": rec.is_conserved() });
        rows.push(("occurrence", format!("m(pi)={} m(pi x det)={} (4n={})", rec.m_pi, rec.m_pi_det, 4 * rec.n)));
    }
    Ok((result, pairs(&rows)))
}

fn run_lir(ctx: &Ctx) -> Out {
    let cmd = &ctx.scenario.command;
    let phi0 = ctx.param(&cmd.positional[0]);
    let c = ctx.class_opt("c");
    let tau = match cmd.opt("tau") {
        Some(Value::Atom(s)) => s.clone(),
        _ => unreachable!("--tau is required by the parser"),
    };
    let group0 = ComponentGroup::of(phi0);
    let eta0 = group0.parse_character(&ctx.bits("eta0"))?;
    let member0 = PacketMember::orth(phi0, ctx.chi_v, c, eta0)?;
    let induced = build_induced(&tau, &member0)?;
    let datum = WhittakerDatum::new(c);
    let orthogonal = tau.is_orthogonal();
    let mut table = Table::new(&["eta", "scalar"]);
    let mut rows = Vec::new();
    for eta in &induced.constituents {
        let scalar = if orthogonal { Some(intertwining_scalar(&induced, eta, datum)?) } else { None };
        table.row(vec![eta.bits(), scalar.map(|s| s.to_string()).unwrap_or_else(|| "n/a".into())]);
        rows.push(json!({ "eta_bits": eta.bits(), "scalar": scalar.map(sign_json) }));
    }
    let det = if orthogonal {
        let r = det_twist_sign(&induced)?;
        json!({ "sign": sign_json(r.sign), "consistent": r.consistent })
    } else {
        Json::Null
    };
    let result = json!({
        "phi_tau": tau.atom(),
        "phi0": phi0.to_string(),
        "eta0": eta0.bits(),
        "phi": induced.phi.to_string(),
        "constituents": rows,
        "reducible": induced.is_reducible(),
        "det_twist": det,
    });
    let head = pairs(&[
        ("phi", induced.phi.to_string()),
        ("reducible", induced.is_reducible().to_string()),
        ("det twist", if det.is_null() { "n/a".into() } else { format!("sign {} consistent {}", det["sign"], det["consistent"]) }),
    ]);
    Ok((result, format!("{head}{}", table.render())))
}

fn expr_json(e: &FactorExpr) -> Result<Json, CliError> {
    Ok(json!({ "expr": e.to_string(), "normal_form": rewrite(e)?.to_string() }))
}

fn run_factors(ctx: &Ctx) -> Out {
    let cmd = &ctx.scenario.command;
    let field = ctx.scenario.field;
    let kind = ctx.factor_kind().to_string();
    let phi = cmd.positional.get(1).map(|v| ctx.param(v));
    let need_phi = || phi.ok_or_else(|| usage(format!("`factors {kind}` needs a parameter name")));
    let backend = if cmd.word("backend") == Some("gamma") { Backend::Gamma } else { Backend::Standard };
    let mut rows: Vec<(&str, String)> = Vec::new();
    let result = match kind.as_str() {
        "gamma" => {
            let chi = QuadraticCharacter::new(ctx.class_opt("chi"));
            let e = gamma_of_parameter(need_phi()?, chi, field.one());
            rows.push(("gamma", e.to_string()));
            rows.push(("normal form", rewrite(&e)?.to_string()));
            expr_json(&e)?
        }
        "plancherel" => {
            let e = plancherel_expr(&ctx.atom("tau")?, need_phi()?, field.one());
            rows.push(("mu", e.to_string()));
            rows.push(("normal form", rewrite(&e)?.to_string()));
            expr_json(&e)?
        }
        "normalize" => {
            let e = normalizing_factor(&ctx.atom("tau")?, need_phi()?, ctx.side(Side::Orth), ctx.chi_v, backend);
            rows.push(("r", e.to_string()));
            expr_json(&e)?
        }
        "comgamma" => {
            let chi = QuadraticCharacter::new(ctx.class_opt("chi"));
            let ok = verify_comgamma(need_phi()?, ctx.chi_v, chi)?;
            rows.push(("holds", ok.to_string()));
            json!({ "holds": ok })
        }
        "complan" => {
            let ok = verify_complan(&ctx.atom("tau")?, need_phi()?, ctx.chi_v)?;
            rows.push(("holds", ok.to_string()));
            json!({ "holds": ok })
        }
        "rsq" => {
            let tau = ctx.atom("tau")?;
            let phi0 = need_phi()?;
            let mut per = serde_json::Map::new();
            let mut all = true;
            for b in Backend::ALL {
                let name = if b == Backend::Standard { "standard" } else { "gamma" };
                let nf = rewrite(&r_squared_parts(&tau, phi0, ctx.chi_v, b)?.identity().lhs)?;
                all &= nf.is_unit();
                rows.push((name, nf.to_string()));
                per.insert(name.to_string(), json!(nf.to_string()));
            }
            rows.push(("holds", all.to_string()));
            json!({ "holds": all, "normal_forms": per })
        }
        "scalar" => {
            let tau = ctx.atom("tau")?;
            let k = match cmd.opt("k") {
                Some(Value::Int(k)) if *k >= 0 => *k as u32,
                Some(_) => return Err(usage("--k must be nonnegative")),
                None => tau.dim(),
            };
            let s = theta_scalar(&tau, ctx.class_opt("c"), k, ctx.chi_v)?;
            rows.push(("scalar", s.to_string()));
            json!({ "scalar": sign_json(s), "k": k })
        }
        other => return Err(usage(format!("unknown factor command `{other}`"))),
    };
    Ok((result, pairs(&rows)))
}

fn run_so(ctx: &Ctx) -> Out {
    let phi = ctx.param(&ctx.scenario.command.positional[0]);
    let c = ctx.class_opt("c");
    let report = so_descend(phi, ctx.chi_v, WhittakerDatum::new(c))?;
    let mut table = Table::new(&["orbit", "restriction to S+"]);
    let orbits: Vec<Json> = report
        .orbits
        .iter()
        .map(|o| {
            let members: Vec<String> = o.members.iter().map(|e| e.bits()).collect();
            let restr: String = o.restriction.iter().map(|s| s.symbol()).collect();
            table.row(vec![members.join(" "), if restr.is_empty() { "()".into() } else { restr.clone() }]);
            json!({ "members": members, "restriction": restr })
        })
        .collect();
    let result = json!({
        "phi": phi.to_string(),
        "orbits": orbits,
        "s_plus_order": report.s_plus_order,
        "bijective": report.bijective,
        "square_commutes": report.square_commutes,
    });
    let head = pairs(&[
        ("|S+|", report.s_plus_order.to_string()),
        ("bijective", report.bijective.to_string()),
        ("square commutes", report.square_commutes.to_string()),
    ]);
    Ok((result, format!("{head}{}", table.render())))
}

fn run_embed(ctx: &Ctx) -> Out {
    let p = &ctx.scenario.command.positional;
    let (phi0, phi) = (ctx.param(&p[0]), ctx.param(&p[1]));
    let e = embed_component(phi0, phi)?;
    let g0 = ComponentGroup::of(phi0).labels();
    let g = ComponentGroup::of(phi).labels();
    let map: Vec<String> = e.images.iter().enumerate().map(|(i, &j)| format!("{} -> {}", g0[i], g[j])).collect();
    let result = json!({ "images": e.images, "target_rank": e.target_rank, "surjective": e.is_surjective() });
    let table = pairs(&[("map", map.join(", ")), ("surjective", e.is_surjective().to_string())]);
    Ok((result, table))
}

fn run_contra(ctx: &Ctx) -> Out {
    let phi = ctx.param(&ctx.scenario.command.positional[0]);
    let c = ctx.class_opt("c");
    let eta = ComponentGroup::of(phi).parse_character(&ctx.bits("eta"))?;
    let member = match ctx.side(Side::Symp) {
        Side::Symp => PacketMember::symp(phi, ctx.chi_v, c, eta, GroupTag::Vplus)?,
        Side::Orth => PacketMember::orth(phi, ctx.chi_v, c, eta)?,
    };
    let dual = contragredient_symp(&member)?;
    let result = json!({ "eta_bits": eta.bits(), "dual_bits": dual.bits() });
    Ok((result, pairs(&[("eta", eta.bits()), ("dual", dual.bits())])))
}
