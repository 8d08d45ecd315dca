//! Line-oriented problem files.
//!
//! ```text
//! # cusp
//! vars: x, y
//! ideal: y^2 - x^3
//! f: x
//! point: (0, 0)
//! params: k=2 maxOrder=2
//! ```
//!
//! A line containing `:` opens a section; following lines continue it. Items
//! inside `vars`, `ideal` and `candidates` are separated by commas or newlines.

use crate::error::{Error, Result};
use crate::jet::{ArcHom, Jet};
use crate::parse::parse_polynomial;
use crate::poly::{OrderKind, Polynomial, TermOrder};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub order: OrderKind,
    pub k: u32,
    /// Degree bound for candidate scans.
    pub d: Option<u32>,
    pub k_max: u32,
    pub max_order: usize,
    /// Branches per order in the arc search.
    pub budget: usize,
    /// Half-width of the sampling box.
    pub half_width: f64,
    pub resolution: f64,
    pub tol: f64,
    pub lift_to: Option<usize>,
    pub assert_real_radical: bool,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            order: OrderKind::GrevLex,
            k: 2,
            d: None,
            k_max: 2,
            max_order: 4,
            budget: 20_000,
            half_width: 2.0,
            resolution: 0.1,
            tol: 1e-9,
            lift_to: None,
            assert_real_radical: false,
        }
    }
}

impl Params {
    fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> std::result::Result<T, String> {
            v.parse().map_err(|_| format!("invalid value `{v}` for `{key}`"))
        }
        match key {
            "order" => {
                self.order = match value {
                    "lex" => OrderKind::Lex,
                    "grevlex" => OrderKind::GrevLex,
                    _ => return Err(format!("unknown term order `{value}`")),
                }
            }
            "k" => self.k = num(key, value)?,
            "d" => self.d = Some(num(key, value)?),
            "kMax" => self.k_max = num(key, value)?,
            "maxOrder" => self.max_order = num(key, value)?,
            "budget" => self.budget = num(key, value)?,
            "box" => self.half_width = num(key, value)?,
            "resolution" => self.resolution = num(key, value)?,
            "tol" => self.tol = num(key, value)?,
            "liftTo" => self.lift_to = Some(num(key, value)?),
            "assertRealRadical" => self.assert_real_radical = num(key, value)?,
            _ => return Err(format!("unknown parameter `{key}`")),
        }
        Ok(())
    }

    /// `key=value` lines in a fixed order.
    pub fn to_lines(&self) -> Vec<String> {
        let mut out = vec![format!("order={}", order_name(self.order)), format!("k={}", self.k)];
        if let Some(d) = self.d {
            out.push(format!("d={d}"));
        }
        out.push(format!("kMax={}", self.k_max));
        out.push(format!("maxOrder={}", self.max_order));
        out.push(format!("budget={}", self.budget));
        out.push(format!("box={:?}", self.half_width));
        out.push(format!("resolution={:?}", self.resolution));
        out.push(format!("tol={:?}", self.tol));
        if let Some(l) = self.lift_to {
            out.push(format!("liftTo={l}"));
        }
        out.push(format!("assertRealRadical={}", self.assert_real_radical));
        out
    }
}

pub fn order_name(kind: OrderKind) -> &'static str {
    match kind {
        OrderKind::Lex => "lex",
        OrderKind::GrevLex => "grevlex",
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    pub vars: Vec<String>,
    pub ideal: Vec<Polynomial>,
    pub f: Option<Polynomial>,
    pub points: Vec<Vec<Rational>>,
    pub candidates: Vec<Polynomial>,
    pub arc: Option<ArcHom>,
    pub params: Params,
}

impl ProblemFile {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn term_order(&self) -> TermOrder {
        match self.params.order {
            OrderKind::Lex => TermOrder::lex(self.nvars()),
            OrderKind::GrevLex => TermOrder::grevlex(self.nvars()),
        }
    }

    pub fn poly_text(&self, p: &Polynomial) -> String {
        p.to_string_with(&self.vars, &self.term_order())
    }

    /// Canonical text; parsing it gives back an equal problem.
    pub fn to_text(&self) -> String {
        let mut s = format!("vars: {}\n", self.vars.join(", "));
        s.push_str("ideal:\n");
        for g in &self.ideal {
            s.push_str(&format!("  {}\n", self.poly_text(g)));
        }
        if let Some(f) = &self.f {
            s.push_str(&format!("f: {}\n", self.poly_text(f)));
        }
        for p in &self.points {
            s.push_str(&format!("point: {}\n", rational::fmt_point(p)));
        }
        if !self.candidates.is_empty() {
            s.push_str("candidates:\n");
            for c in &self.candidates {
                s.push_str(&format!("  {}\n", self.poly_text(c)));
            }
        }
        if let Some(arc) = &self.arc {
            s.push_str(&format!("arc: order={}\n", arc.order()));
            for line in arc.to_lines(&self.vars) {
                s.push_str(&format!("  {line}\n"));
            }
        }
        s.push_str("params:\n");
        for line in self.params.to_lines() {
            s.push_str(&format!("  {line}\n"));
        }
        s
    }
}

/// A piece of source text with its 1-based position.
#[derive(Clone, Debug)]
struct Item<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl Item<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.col, message)
    }

    /// Re-anchor an error reported relative to this item.
    fn relocate(&self, e: Error) -> Error {
        match e {
            Error::Parse { column, message, .. } => Error::parse(self.line, self.col + column - 1, message),
            other => other,
        }
    }
}

fn trimmed(text: &str, line: usize, col: usize) -> Item<'_> {
    let lead = text.len() - text.trim_start().len();
    Item {
        text: text.trim(),
        line,
        col: col + lead,
    }
}

/// Split on top-level commas (outside parentheses).
fn split_commas<'a>(item: &Item<'a>) -> Vec<Item<'a>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in item.text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(trimmed(&item.text[start..i], item.line, item.col + start));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(trimmed(&item.text[start..], item.line, item.col + start));
    out.retain(|it| !it.text.is_empty());
    out
}

struct Section<'a> {
    name: &'a str,
    line: usize,
    body: Vec<Item<'a>>,
}

const SECTIONS: [&str; 7] = ["vars", "ideal", "f", "point", "candidates", "arc", "params"];

fn sections(text: &str) -> Result<Vec<Section<'_>>> {
    let mut out: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(h) => &raw[..h],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        if let Some(colon) = content.find(':') {
            let head = trimmed(&content[..colon], line, 1);
            if !SECTIONS.contains(&head.text) {
                return Err(head.error(format!("unknown section `{}`", head.text)));
            }
            let mut sec = Section {
                name: head.text,
                line,
                body: Vec::new(),
            };
            let rest = trimmed(&content[colon + 1..], line, colon + 2);
            if !rest.text.is_empty() {
                sec.body.push(rest);
            }
            out.push(sec);
        } else {
            match out.last_mut() {
                Some(sec) => sec.body.push(trimmed(content, line, 1)),
                None => return Err(Error::parse(line, 1, "content before the first section")),
            }
        }
    }
    Ok(out)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_point(item: &Item, nvars: usize) -> Result<Vec<Rational>> {
    let inner = item
        .text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(item.text);
    let offset = if inner.len() < item.text.len() { 1 } else { 0 };
    let coords = split_commas(&trimmed(inner, item.line, item.col + offset));
    let p: Vec<Rational> = coords
        .iter()
        .map(|c| rational::parse(c.text).ok_or_else(|| c.error(format!("malformed rational `{}`", c.text))))
        .collect::<Result<_>>()?;
    if p.len() != nvars {
        return Err(item.error(format!("point has {} coordinates, expected {nvars}", p.len())));
    }
    Ok(p)
}

/// Parse and validate a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let secs = sections(text)?;
    for name in ["vars", "ideal", "f", "candidates", "arc"] {
        if let Some(dup) = secs.iter().filter(|s| s.name == name).nth(1) {
            return Err(Error::parse(dup.line, 1, format!("duplicate section `{name}`")));
        }
    }
    let find = |name: &str| secs.iter().find(|s| s.name == name);
    let vars_sec = find("vars").ok_or_else(|| Error::parse(1, 1, "missing section `vars`"))?;
    let ideal_sec = find("ideal").ok_or_else(|| Error::parse(1, 1, "missing section `ideal`"))?;

    let mut vars: Vec<String> = Vec::new();
    for it in vars_sec.body.iter().flat_map(split_commas) {
        if !is_identifier(it.text) {
            return Err(it.error(format!("invalid variable name `{}`", it.text)));
        }
        if vars.iter().any(|v| v == it.text) {
            return Err(it.error(format!("duplicate variable `{}`", it.text)));
        }
        vars.push(it.text.to_string());
    }
    if vars.is_empty() {
        return Err(Error::parse(vars_sec.line, 1, "no variables declared"));
    }
    let n = vars.len();
    let poly = |it: &Item| parse_polynomial(it.text, &vars).map_err(|e| it.relocate(e));
    let ideal = ideal_sec
        .body
        .iter()
        .flat_map(split_commas)
        .map(|it| poly(&it))
        .collect::<Result<Vec<_>>>()?;
    let f = match find("f") {
        Some(sec) => {
            let items: Vec<Item> = sec.body.iter().flat_map(split_commas).collect();
            match items.as_slice() {
                [one] => Some(poly(one)?),
                _ => return Err(Error::parse(sec.line, 1, "section `f` takes exactly one polynomial")),
            }
        }
        None => None,
    };
    let mut points = Vec::new();
    for sec in secs.iter().filter(|s| s.name == "point") {
        for it in &sec.body {
            points.push(parse_point(it, n)?);
        }
    }
    let candidates = match find("candidates") {
        Some(sec) => sec
            .body
            .iter()
            .flat_map(split_commas)
            .map(|it| poly(&it))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let mut params = Params::default();
    for sec in secs.iter().filter(|s| s.name == "params") {
        for it in &sec.body {
            for kv in it.text.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                let col = it.col + (kv.as_ptr() as usize - it.text.as_ptr() as usize);
                let (key, value) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::parse(it.line, col, format!("expected key=value, found `{kv}`")))?;
                params.set(key, value).map_err(|m| Error::parse(it.line, col, m))?;
            }
        }
    }
    let arc = match find("arc") {
        Some(sec) => Some(parse_arc(sec, &vars)?),
        None => None,
    };
    Ok(ProblemFile {
        vars,
        ideal,
        f,
        points,
        candidates,
        arc,
        params,
    })
}

fn parse_arc(sec: &Section, vars: &[String]) -> Result<ArcHom> {
    let mut order = None;
    let mut images: Vec<Option<(Item, &str)>> = vec![None; vars.len()];
    for it in &sec.body {
        if let Some(v) = it.text.strip_prefix("order=") {
            order = Some(v.trim().parse::<usize>().map_err(|_| it.error("invalid arc order"))?);
            continue;
        }
        let (name, jet) = it
            .text
            .split_once("->")
            .ok_or_else(|| it.error("expected `var -> jet`"))?;
        let name = name.trim();
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| it.error(format!("unknown variable `{name}`")))?;
        if images[idx].is_some() {
            return Err(it.error(format!("variable `{name}` assigned twice")));
        }
        let jet_col = it.col + it.text.find("->").unwrap() + 2;
        images[idx] = Some((trimmed(jet, it.line, jet_col), jet));
    }
    let order = order.ok_or_else(|| Error::parse(sec.line, 1, "arc section needs `order=m`"))?;
    let mut jets = Vec::with_capacity(vars.len());
    for (v, img) in vars.iter().zip(&images) {
        let (item, _) = img
            .as_ref()
            .ok_or_else(|| Error::parse(sec.line, 1, format!("arc has no image for `{v}`")))?;
        jets.push(Jet::parse(item.text, order).map_err(|e| item.relocate(e))?);
    }
    let basepoint = jets.iter().map(|j| j.coeff(0).clone()).collect();
    ArcHom::new(basepoint, jets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    const CUSP: &str = "# cusp\nvars: x, y\nideal: y^2 - x^3\nf: x\npoint: (0, 0)\nparams: k=2 maxOrder=2\n";

    #[test]
    fn parses_cusp() {
        let p = parse_problem(CUSP).unwrap();
        assert_eq!(p.vars, vec!["x", "y"]);
        assert_eq!(p.ideal.len(), 1);
        assert_eq!(p.points, vec![vec![int(0), int(0)]]);
        assert_eq!(p.params.max_order, 2);
    }

    #[test]
    fn undeclared_variable_is_located() {
        let err = parse_problem("vars: x, y\nideal:\n  y^2 - z\n").unwrap_err();
        match err {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (3, 9));
                assert!(message.contains("`z`"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_ideal_and_missing_sections() {
        let p = parse_problem("vars: x\nideal:\n").unwrap();
        assert!(p.ideal.is_empty());
        assert!(matches!(parse_problem("ideal: x\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_problem("vars: x\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_problem("vars: x\nideal: x\nbogus: 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip_with_arc_and_params() {
        let text = "vars: x, y, z\nideal: y^2 - x^5, z - x^3\nf: z\npoint: (0,0,0)\npoint: (1/2, 3, -1)\n\
                    candidates: x, y + z\narc: order=4\n  x -> -e\n  y -> 0\n  z -> -e^3\n\
                    params: order=lex d=3 tol=1e-8 assertRealRadical=true liftTo=6\n";
        let p = parse_problem(text).unwrap();
        let arc = p.arc.as_ref().unwrap();
        assert_eq!(arc.order(), 4);
        assert_eq!(p.params.order, OrderKind::Lex);
        assert!(p.params.assert_real_radical);
        let again = parse_problem(&p.to_text()).unwrap();
        assert_eq!(again, p);
        assert_eq!(again.to_text(), p.to_text());
    }

    #[test]
    fn bad_points_and_params() {
        assert!(parse_problem("vars: x, y\nideal:\npoint: (1)\n").is_err());
        assert!(parse_problem("vars: x\nideal:\npoint: (1/0)\n").is_err());
        assert!(parse_problem("vars: x\nideal:\nparams: k=two\n").is_err());
        assert!(parse_problem("vars: x\nideal:\nparams: speed=3\n").is_err());
    }
}
