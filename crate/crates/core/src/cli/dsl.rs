//! Scenario language: a field, a discriminant, named parameters and one command.
//!
//! ```text
//! field Q(5);
//! chiV 5;
//! param phi { chi(1); chi(5); }
//! packet phi --c 1 --format table
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;

use super::CliError;
use crate::arithmetic::{LocalField, SquareClass};
use crate::parameters::{Parameter, Summand, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    Flag(String),
    Bits(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Flag(s) => write!(f, "`--{s}`"),
            Tok::Bits(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let bump = |i: &mut usize, col: &mut usize, n: usize| {
        *i += n;
        *col += n;
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let next = chars.get(i + 1).copied();
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            bump(&mut i, &mut col, 1);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                bump(&mut i, &mut col, 1);
            }
            continue;
        }
        let tok = if c.is_ascii_digit() || (c == '-' && next.is_some_and(|n| n.is_ascii_digit())) {
            let start = i;
            bump(&mut i, &mut col, 1);
            while i < chars.len() && chars[i].is_ascii_digit() {
                bump(&mut i, &mut col, 1);
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse::<i64>().map_err(|_| CliError::parse(l0, c0, &["an integer in range"], &s))?;
            Tok::Int(n)
        } else if c == '-' && next == Some('-') && chars.get(i + 2).is_some_and(|n| n.is_ascii_alphabetic()) {
            bump(&mut i, &mut col, 2);
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '-') {
                bump(&mut i, &mut col, 1);
            }
            Tok::Flag(chars[start..i].iter().collect())
        } else if c == '+' || c == '-' {
            let start = i;
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                bump(&mut i, &mut col, 1);
            }
            Tok::Bits(chars[start..i].iter().collect())
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                bump(&mut i, &mut col, 1);
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "(){};,*@/~".contains(c) {
            bump(&mut i, &mut col, 1);
            Tok::Sym(c)
        } else {
            return Err(CliError::parse(l0, c0, &["a token"], &c.to_string()));
        };
        out.push(Spanned { tok, line: l0, col: c0 });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

/// A typed command argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Class(SquareClass),
    Int(i64),
    Name(String),
    Bits(String),
    Word(String),
    Atom(Summand),
}

impl Value {
    pub fn class(&self) -> Option<SquareClass> {
        match self {
            Value::Class(c) => Some(*c),
            _ => None,
        }
    }

    pub fn text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Class(c) => write!(f, "{c}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Name(s) | Value::Word(s) => f.write_str(s),
            Value::Bits(s) if s.is_empty() => f.write_str("()"),
            Value::Bits(s) => f.write_str(s),
            Value::Atom(s) => f.write_str(&s.atom()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Class,
    Int,
    Name,
    Bits,
    Word(&'static [&'static str]),
    Atom,
}

struct OptSpec {
    name: &'static str,
    kind: Kind,
    required: bool,
}

struct CmdSpec {
    name: &'static str,
    positional: &'static [Kind],
    optional_positional: usize,
    options: &'static [OptSpec],
}

const FORMAT: OptSpec = OptSpec { name: "format", kind: Kind::Word(&["json", "table"]), required: false };
const C: OptSpec = OptSpec { name: "c", kind: Kind::Class, required: false };
const SIDE: OptSpec = OptSpec { name: "side", kind: Kind::Word(&["orth", "sp"]), required: false };
const FACTOR_KINDS: &[&str] = &["comgamma", "complan", "gamma", "normalize", "plancherel", "rsq", "scalar"];

const COMMANDS: &[CmdSpec] = &[
    CmdSpec { name: "hilbert", positional: &[Kind::Class, Kind::Class], optional_positional: 0, options: &[FORMAT] },
    CmdSpec { name: "space", positional: &[Kind::Int, Kind::Class, Kind::Int], optional_positional: 0, options: &[FORMAT] },
    CmdSpec { name: "packet", positional: &[Kind::Name], optional_positional: 0, options: &[C, FORMAT] },
    CmdSpec {
        name: "theta",
        positional: &[Kind::Name],
        optional_positional: 0,
        options: &[
            OptSpec { name: "eta", kind: Kind::Bits, required: true },
            OptSpec { name: "dir", kind: Kind::Word(&["up", "down"]), required: true },
            SIDE,
            OptSpec { name: "tower", kind: Kind::Word(&["plus", "minus"]), required: false },
            C,
            FORMAT,
        ],
    },
    CmdSpec {
        name: "lir",
        positional: &[Kind::Name],
        optional_positional: 0,
        options: &[
            OptSpec { name: "eta0", kind: Kind::Bits, required: true },
            OptSpec { name: "tau", kind: Kind::Atom, required: true },
            C,
            FORMAT,
        ],
    },
    CmdSpec {
        name: "factors",
        positional: &[Kind::Word(FACTOR_KINDS), Kind::Name],
        optional_positional: 1,
        options: &[
            OptSpec { name: "tau", kind: Kind::Atom, required: false },
            OptSpec { name: "chi", kind: Kind::Class, required: false },
            C,
            OptSpec { name: "k", kind: Kind::Int, required: false },
            SIDE,
            OptSpec { name: "backend", kind: Kind::Word(&["standard", "gamma"]), required: false },
            FORMAT,
        ],
    },
    CmdSpec { name: "so", positional: &[Kind::Name], optional_positional: 0, options: &[C, FORMAT] },
    CmdSpec { name: "embed", positional: &[Kind::Name, Kind::Name], optional_positional: 0, options: &[FORMAT] },
    CmdSpec {
        name: "contra",
        positional: &[Kind::Name],
        optional_positional: 0,
        options: &[OptSpec { name: "eta", kind: Kind::Bits, required: true }, SIDE, C, FORMAT],
    },
];

/// A parsed command line: name, positional arguments and options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub name: String,
    pub positional: Vec<Value>,
    pub options: BTreeMap<String, Value>,
}

impl Command {
    pub fn opt(&self, name: &str) -> Option<&Value> {
        self.options.get(name)
    }

    pub fn word(&self, name: &str) -> Option<&str> {
        match self.options.get(name) {
            Some(Value::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn spec(&self) -> &'static CmdSpec {
        COMMANDS.iter().find(|c| c.name == self.name).expect("parsed commands are known")
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for v in &self.positional {
            write!(f, " {v}")?;
        }
        for o in self.spec().options {
            if let Some(v) = self.options.get(o.name) {
                write!(f, " --{} {v}", o.name)?;
            }
        }
        Ok(())
    }
}

/// A complete scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub field: LocalField,
    pub chi_v: SquareClass,
    pub params: Vec<(String, Parameter)>,
    pub command: Command,
}

impl Scenario {
    pub fn param(&self, name: &str) -> Option<&Parameter> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field Q({});", self.field.p())?;
        writeln!(f, "chiV {};", self.chi_v)?;
        for (name, phi) in &self.params {
            writeln!(f, "param {name} {phi}")?;
        }
        writeln!(f, "{}", self.command)
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    field: Option<LocalField>,
    names: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, CliError> {
        let t = self.peek();
        Err(CliError::parse(t.line, t.col, expected, &t.tok.to_string()))
    }

    fn sym(&mut self, c: char) -> Result<(), CliError> {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, k: &str) -> Result<(), CliError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == k => {
                self.next();
                Ok(())
            }
            _ => self.fail(&[&format!("`{k}`")]),
        }
    }

    fn int(&mut self) -> Result<i64, CliError> {
        match self.peek().tok {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            _ => self.fail(&["an integer"]),
        }
    }

    fn ident(&mut self) -> Result<String, CliError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            _ => self.fail(&["a name"]),
        }
    }

    fn rational(&mut self) -> Result<(i64, i64), CliError> {
        let num = self.int()?;
        let den = if self.eat_sym('/') { self.int()? } else { 1 };
        Ok((num, den))
    }

    fn class(&mut self) -> Result<SquareClass, CliError> {
        let at = self.peek().clone();
        let (num, den) = self.rational()?;
        let field = self.field.expect("field is declared first");
        field.square_class(num, den).map_err(|e| CliError::semantic(at.line, at.col, e))
    }

    fn atom(&mut self) -> Result<Summand, CliError> {
        let at = self.peek().clone();
        let kind = self.ident()?;
        let field = self.field.expect("field is declared first");
        let sem = |e| CliError::semantic(at.line, at.col, e);
        self.sym('(')?;
        let summand = match kind.as_str() {
            "chi" => Summand::character(self.class()?),
            "orth" | "symp" | "pair" => {
                let name = self.ident()?;
                let twist = if self.eat_sym('~') { Some(self.class()?) } else { None };
                self.sym(',')?;
                let dim_at = self.peek().clone();
                let dim = self.int()?;
                let dim = u32::try_from(dim).map_err(|_| CliError::parse(dim_at.line, dim_at.col, &["a positive dimension"], &dim.to_string()))?;
                let s = match kind.as_str() {
                    "orth" => {
                        self.sym(',')?;
                        let det = self.class()?;
                        Summand::orthogonal(&name, dim, det).map_err(sem)?
                    }
                    "symp" => Summand::symplectic(&name, dim, field).map_err(sem)?,
                    _ => Summand::pair(&name, dim, field).map_err(sem)?,
                };
                match twist {
                    Some(t) => s.with_twist_label(t),
                    None => s,
                }
            }
            _ => {
                self.pos -= 1;
                return self.fail(&["`chi`", "`orth`", "`symp`", "`pair`"]);
            }
        };
        self.sym(')')?;
        Ok(summand)
    }

    fn term(&mut self) -> Result<Term, CliError> {
        let mut mult = 1;
        if let Tok::Int(n) = self.peek().tok {
            let at = self.peek().clone();
            self.next();
            self.sym('*')?;
            mult = u32::try_from(n)
                .ok()
                .filter(|m| *m > 0)
                .ok_or_else(|| CliError::parse(at.line, at.col, &["a positive multiplicity"], &n.to_string()))?;
        }
        let summand = self.atom()?;
        let shift = if self.eat_sym('@') {
            let at = self.peek().clone();
            let (num, den) = self.rational()?;
            if den == 0 {
                return Err(CliError::parse(at.line, at.col, &["a nonzero denominator"], "0"));
            }
            Rational64::new(num, den)
        } else {
            Rational64::from_integer(0)
        };
        Ok(Term::shifted(summand, mult, shift))
    }

    fn param(&mut self) -> Result<(String, Parameter), CliError> {
        self.keyword("param")?;
        let at = self.peek().clone();
        let name = self.ident()?;
        self.sym('{')?;
        let mut terms = Vec::new();
        while !self.eat_sym('}') {
            if self.peek().tok == Tok::Eof {
                return self.fail(&["`}`"]);
            }
            terms.push(self.term()?);
            self.sym(';')?;
        }
        let field = self.field.expect("field is declared first");
        let phi = Parameter::new(field, terms).map_err(|e| CliError::semantic(at.line, at.col, e))?;
        Ok((name, phi))
    }

    fn value(&mut self, kind: Kind) -> Result<Value, CliError> {
        match kind {
            Kind::Class => Ok(Value::Class(self.class()?)),
            Kind::Int => Ok(Value::Int(self.int()?)),
            Kind::Name => {
                let at = self.peek().clone();
                let name = self.ident()?;
                if !self.names.contains(&name) {
                    return Err(CliError::Semantic {
                        line: at.line,
                        col: at.col,
                        code: "S001",
                        message: format!("unknown parameter `{name}`"),
                    });
                }
                Ok(Value::Name(name))
            }
            Kind::Atom => Ok(Value::Atom(self.atom()?)),
            Kind::Bits => match &self.peek().tok {
                Tok::Bits(b) => {
                    let b = b.clone();
                    self.next();
                    Ok(Value::Bits(b))
                }
                Tok::Sym('(') => {
                    self.next();
                    self.sym(')')?;
                    Ok(Value::Bits(String::new()))
                }
                _ => self.fail(&["a sign string such as `+-`"]),
            },
            Kind::Word(words) => match &self.peek().tok {
                Tok::Ident(w) if words.contains(&w.as_str()) => {
                    let w = w.clone();
                    self.next();
                    Ok(Value::Word(w))
                }
                _ => {
                    let expected: Vec<String> = words.iter().map(|w| format!("`{w}`")).collect();
                    let refs: Vec<&str> = expected.iter().map(String::as_str).collect();
                    self.fail(&refs)
                }
            },
        }
    }

    fn command(&mut self) -> Result<Command, CliError> {
        let names: Vec<String> = COMMANDS.iter().map(|c| format!("`{}`", c.name)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let spec = match &self.peek().tok {
            Tok::Ident(w) => match COMMANDS.iter().find(|c| c.name == w) {
                Some(spec) => spec,
                None => return self.fail(&refs),
            },
            _ => return self.fail(&refs),
        };
        let start = self.next();
        let mut positional = Vec::new();
        let required = spec.positional.len() - spec.optional_positional;
        for (i, kind) in spec.positional.iter().enumerate() {
            if i >= required && !matches!(self.peek().tok, Tok::Ident(_)) {
                break;
            }
            positional.push(self.value(*kind)?);
        }
        let mut options = BTreeMap::new();
        while let Tok::Flag(flag) = &self.peek().tok {
            let flag = flag.clone();
            let Some(opt) = spec.options.iter().find(|o| o.name == flag) else {
                let expected: Vec<String> = spec.options.iter().map(|o| format!("`--{}`", o.name)).collect();
                let refs: Vec<&str> = expected.iter().map(String::as_str).collect();
                return self.fail(&refs);
            };
            if options.contains_key(opt.name) {
                return self.fail(&["a flag not given before"]);
            }
            self.next();
            options.insert(opt.name.to_string(), self.value(opt.kind)?);
        }
        self.eat_sym(';');
        if self.peek().tok != Tok::Eof {
            let mut expected: Vec<String> = spec.options.iter().map(|o| format!("`--{}`", o.name)).collect();
            expected.push("end of input".into());
            let refs: Vec<&str> = expected.iter().map(String::as_str).collect();
            return self.fail(&refs);
        }
        for o in spec.options.iter().filter(|o| o.required) {
            if !options.contains_key(o.name) {
                return Err(CliError::parse(start.line, start.col, &[&format!("`--{}`", o.name)], &self.peek().tok.to_string()));
            }
        }
        Ok(Command { name: spec.name.to_string(), positional, options })
    }

    fn scenario(&mut self) -> Result<Scenario, CliError> {
        self.keyword("field")?;
        let at = self.peek().clone();
        self.keyword("Q")?;
        self.sym('(')?;
        let p = self.int()?;
        self.sym(')')?;
        self.sym(';')?;
        let p = u64::try_from(p).map_err(|_| CliError::parse(at.line, at.col, &["a prime"], &p.to_string()))?;
        self.field = Some(LocalField::new(p).map_err(|e| CliError::semantic(at.line, at.col, e))?);
        self.keyword("chiV")?;
        let chi_v = self.class()?;
        self.sym(';')?;
        let mut params: Vec<(String, Parameter)> = Vec::new();
        while matches!(&self.peek().tok, Tok::Ident(k) if k == "param") {
            let at = self.toks[self.pos + 1].clone();
            let (name, phi) = self.param()?;
            if params.iter().any(|(n, _)| *n == name) {
                return Err(CliError::Semantic {
                    line: at.line,
                    col: at.col,
                    code: "S002",
                    message: format!("parameter `{name}` is declared twice"),
                });
            }
            self.names.push(name.clone());
            params.push((name, phi));
        }
        let command = self.command()?;
        Ok(Scenario { field: self.field.expect("set above"), chi_v, params, command })
    }
}

/// Parses a scenario.
pub fn parse_spec(text: &str) -> Result<Scenario, CliError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0, field: None, names: Vec::new() }.scenario()
}

/// Canonical text of a scenario; `parse_spec` reads it back to an equal scenario.
pub fn print_spec(scenario: &Scenario) -> String {
    scenario.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    const RUNNING: &str = "field Q(5); chiV 5; param phi { chi(1); chi(5); } packet phi --c 1 --format table";

    #[test]
    fn parses_running_scenario() {
        let s = parse_spec(RUNNING).unwrap();
        assert_eq!(s.field.p(), 5);
        assert_eq!(s.params[0].1, Parameter::characters(s.field, &[(1, 1), (5, 1)]).unwrap());
        assert_eq!(s.command.name, "packet");
        assert_eq!(print_spec(&s), "field Q(5);\nchiV 5;\nparam phi { chi(1); chi(5); }\npacket phi --c 1 --format table\n");
        assert_eq!(parse_spec(&print_spec(&s)).unwrap(), s);
    }

    #[test]
    fn zero_class_is_semantic() {
        let err = parse_spec("field Q(5); chiV 5; param bad { chi(0); } packet bad").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_spec("field Q(5);\nchiV 5;\nparam phi { chi(1) }\npacket phi").unwrap_err();
        match err {
            CliError::Parse { line, col, ref expected, .. } => {
                assert_eq!((line, col), (3, 20));
                assert_eq!(expected, &vec!["`;`".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn command_arguments() {
        let s = parse_spec(
            "field Q(2); chiV -1; param p { 2*orth(A~5,2,-1)@1/2; 2*orth(A~5,2,-1)@-1/2; pair(B,1); } theta p --eta -+ --dir down --c -2",
        )
        .unwrap();
        assert_eq!(s.command.opt("eta"), Some(&Value::Bits("-+".into())));
        assert_eq!(s.command.to_string(), "theta p --eta -+ --dir down --c -2");
        assert_eq!(parse_spec(&print_spec(&s)).unwrap(), s);
        let e = parse_spec("field Q(5); chiV 1; factors scalar --tau chi(5) --c 2 --k 1").unwrap();
        assert_eq!(e.command.positional.len(), 1);
        let missing = parse_spec("field Q(5); chiV 1; param p { } theta p --dir up").unwrap_err();
        assert!(matches!(missing, CliError::Parse { .. }));
    }
}
