use std::collections::BTreeMap;

use serde::Serialize;
use spbw_core::exponents;
use spbw_core::{
    Algebra, AlgebraEndo, CalculusSpec, CoeffEndo, CoeffPoly, CoeffSigmaDerivation, Mode, Presentation, Relation, Scalar,
    SkewPoly, SpbwError, Symbols,
};

use super::expr::{self, describe, CoeffDomain, FreeDomain, ScalarDomain, SkewDomain};
use super::lexer::{lex_line, Tok, Token};
use super::{Code, Diagnostic};

/// Run settings that may be fixed inside a document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Options {
    /// Degree bound for d², connectedness and the normal-form caches.
    pub degree: u32,
    pub pbw_degree: u32,
    pub samples: usize,
    pub sample_degree: u32,
    pub leibniz_samples: usize,
    pub gk_degree: u32,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self { degree: 6, pbw_degree: 4, samples: 50, sample_degree: 4, leibniz_samples: 100, gk_degree: 12, seed: 0 }
    }
}

const OPTION_KEYS: [&str; 7] = ["degree", "pbw_degree", "samples", "sample_degree", "leibniz_samples", "gk_degree", "seed"];

impl Options {
    fn set(&mut self, key: &str, v: u64) {
        match key {
            "degree" => self.degree = v as u32,
            "pbw_degree" => self.pbw_degree = v as u32,
            "samples" => self.samples = v as usize,
            "sample_degree" => self.sample_degree = v as u32,
            "leibniz_samples" => self.leibniz_samples = v as usize,
            "gk_degree" => self.gk_degree = v as u32,
            "seed" => self.seed = v,
            _ => unreachable!("checked against OPTION_KEYS"),
        }
    }

    pub(crate) fn entries(&self) -> [(&'static str, u64); 7] {
        [
            ("degree", self.degree as u64),
            ("pbw_degree", self.pbw_degree as u64),
            ("samples", self.samples as u64),
            ("sample_degree", self.sample_degree as u64),
            ("leibniz_samples", self.leibniz_samples as u64),
            ("gk_degree", self.gk_degree as u64),
            ("seed", self.seed),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct CalculusDoc {
    pub mode: Mode,
    pub names: Vec<String>,
    pub forms: Vec<Vec<Scalar>>,
    /// Coordinate images per differential; identity where not given.
    pub twists: Vec<Vec<SkewPoly>>,
    pub inverses: Vec<Option<Vec<SkewPoly>>>,
    /// λ for index pairs i < j.
    pub wedges: BTreeMap<(usize, usize), Scalar>,
    /// Whether differentials were declared explicitly.
    pub explicit_dgens: bool,
}

impl PartialEq for CalculusDoc {
    fn eq(&self, o: &Self) -> bool {
        self.mode == o.mode
            && self.names == o.names
            && self.forms == o.forms
            && self.twists == o.twists
            && self.inverses == o.inverses
            && self.wedges == o.wedges
    }
}

#[derive(Clone, Debug)]
pub struct PresentationDoc {
    pub name: String,
    pub algebra: Algebra,
    pub calculus: Option<CalculusDoc>,
    pub options: Options,
}

impl PartialEq for PresentationDoc {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = (self.algebra.presentation(), o.algebra.presentation());
        self.name == o.name
            && a.symbols == b.symbols
            && a.sigma.iter().map(|s| s.images()).eq(b.sigma.iter().map(|s| s.images()))
            && a.delta.iter().map(|d| d.images()).eq(b.delta.iter().map(|d| d.images()))
            && a.stored_relations() == b.stored_relations()
            && self.calculus == o.calculus
            && self.options == o.options
    }
}

impl PresentationDoc {
    /// Assemble the calculus specification, building and inverting the twists.
    pub fn calculus_spec(&self) -> Option<Result<CalculusSpec, SpbwError>> {
        let c = self.calculus.as_ref()?;
        Some(self.build_spec(c))
    }

    fn build_spec(&self, c: &CalculusDoc) -> Result<CalculusSpec, SpbwError> {
        let alg = &self.algebra;
        if c.mode == Mode::Theorem {
            return CalculusSpec::theorem(alg);
        }
        let mut twists = Vec::with_capacity(c.twists.len());
        for (k, (imgs, inv)) in c.twists.iter().zip(&c.inverses).enumerate() {
            let e = AlgebraEndo::new(alg, imgs.clone())
                .map_err(|e| SpbwError::Calculus(format!("twist of {}: {e}", c.names[k])))?;
            let e = match inv {
                Some(inv) => e.with_inverse(inv.clone()),
                None => e.with_affine_inverse(),
            }
            .map_err(|e| SpbwError::Calculus(format!("twist of {}: {e}", c.names[k])))?;
            twists.push(e);
        }
        let mut spec = CalculusSpec::flat(alg, twists).with_dgens(c.names.clone(), c.forms.clone());
        for (&(i, j), l) in &c.wedges {
            spec = spec.with_wedge_sign(i, j, l.clone());
        }
        Ok(spec)
    }
}

struct Line {
    no: usize,
    toks: Vec<Token>,
    end: usize,
}

impl Line {
    fn keyword(&self) -> Option<&str> {
        match self.toks.first().map(|t| &t.tok) {
            Some(Tok::Ident(s)) => Some(s),
            _ => None,
        }
    }

    fn col(&self, i: usize) -> usize {
        self.toks.get(i).map(|t| t.col).unwrap_or(self.end)
    }

    fn err(&self, code: Code, i: usize, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::new(code, msg, self.no, self.col(i))
    }

    fn ident(&self, i: usize, what: &str) -> Result<&str, Diagnostic> {
        match self.toks.get(i).map(|t| &t.tok) {
            Some(Tok::Ident(s)) => Ok(s),
            Some(t) => Err(self.err(Code::Syntax, i, format!("expected {what}, found {}", describe(t)))),
            None => Err(self.err(Code::Syntax, i, format!("expected {what}"))),
        }
    }

    fn expect(&self, i: usize, tok: Tok) -> Result<(), Diagnostic> {
        match self.toks.get(i) {
            Some(t) if t.tok == tok => Ok(()),
            Some(t) => Err(self.err(Code::Syntax, i, format!("expected {}, found {}", describe(&tok), describe(&t.tok)))),
            None => Err(self.err(Code::Syntax, i, format!("expected {}", describe(&tok)))),
        }
    }

    fn expr_from(&self, i: usize) -> Result<expr::Expr, Diagnostic> {
        expr::parse_tokens(&self.toks[i.min(self.toks.len())..], self.no, self.end)
    }

    fn idents_from(&self, i: usize) -> Result<Vec<(String, usize)>, Diagnostic> {
        (i..self.toks.len()).map(|k| self.ident(k, "a name").map(|s| (s.to_string(), self.col(k)))).collect()
    }
}

#[derive(PartialEq)]
enum Block {
    Top,
    Calculus,
    Options,
}

const TOP: [&str; 9] = ["name", "params", "coeffs", "gens", "sigma", "delta", "rel", "calculus", "options"];

fn position(names: &[String], s: &str) -> Option<usize> {
    names.iter().position(|n| n == s)
}

/// Coordinate index of a degree-one basis term.
fn coord_of(gamma: &[u32], alpha: &[u32], m: usize) -> Option<usize> {
    match (exponents::degree(gamma), exponents::degree(alpha)) {
        (1, 0) => gamma.iter().position(|&e| e == 1),
        (0, 1) => alpha.iter().position(|&e| e == 1).map(|i| m + i),
        _ => None,
    }
}

pub fn parse_presentation(text: &str) -> Result<PresentationDoc, Diagnostic> {
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let toks = lex_line(raw, k + 1)?;
        if !toks.is_empty() {
            lines.push(Line { no: k + 1, toks, end: raw.chars().count() + 1 });
        }
    }

    // Declarations first, so they may appear anywhere.
    let mut name: Option<String> = None;
    let mut sym = Symbols::default();
    let mut seen_decl: BTreeMap<&str, usize> = BTreeMap::new();
    let mut declared: BTreeMap<String, ()> = BTreeMap::new();
    let mut gens_line = 1;
    for l in &lines {
        let kw = l.keyword();
        match kw {
            Some(k @ ("name" | "params" | "coeffs" | "gens")) => {
                if let Some(prev) = seen_decl.insert(k, l.no) {
                    return Err(l.err(Code::Duplicate, 0, format!("`{k}` already given on line {prev}")));
                }
                if k == "name" {
                    let n = l.ident(1, "a name")?;
                    if l.toks.len() > 2 {
                        return Err(l.err(Code::Syntax, 2, "expected end of line after the name"));
                    }
                    name = Some(n.to_string());
                    continue;
                }
                let ids = l.idents_from(1)?;
                for (id, col) in &ids {
                    if declared.insert(id.clone(), ()).is_some() {
                        return Err(Diagnostic::new(Code::Duplicate, format!("`{id}` declared twice"), l.no, *col));
                    }
                }
                let ids = ids.into_iter().map(|(s, _)| s).collect();
                match k {
                    "params" => sym.params = ids,
                    "coeffs" => sym.coeffs = ids,
                    _ => {
                        sym.gens = ids;
                        gens_line = l.no;
                    }
                }
            }
            Some("invertible") => {
                return Err(l.err(Code::Reserved, 0, "`invertible` generators are not supported"));
            }
            _ => {}
        }
    }
    let (m, n) = (sym.coeffs.len(), sym.gens.len());

    let mut sigma_imgs: Vec<Vec<CoeffPoly>> = vec![(0..m).map(CoeffPoly::var).collect(); n];
    let mut delta_imgs: Vec<Vec<CoeffPoly>> = vec![vec![CoeffPoly::zero(); m]; n];
    let mut map_seen: BTreeMap<(String, usize, usize), usize> = BTreeMap::new();
    let mut map_line = gens_line;
    let mut rels: BTreeMap<(usize, usize), Relation> = BTreeMap::new();
    let mut rel_lines: BTreeMap<(usize, usize), usize> = BTreeMap::new();

    let mut block = Block::Top;
    let mut mode: Option<(Mode, usize)> = None;
    let mut calc_lines: Vec<&Line> = Vec::new();
    let mut options = Options::default();
    let mut opt_seen: BTreeMap<String, usize> = BTreeMap::new();

    for l in &lines {
        let Some(kw) = l.keyword() else {
            return Err(l.err(Code::Syntax, 0, "expected a keyword"));
        };
        if TOP.contains(&kw) {
            block = Block::Top;
        }
        match kw {
            "name" | "params" | "coeffs" | "gens" => {}
            "sigma" | "delta" => {
                let g = l.ident(1, "a generator")?;
                let i = position(&sym.gens, g)
                    .ok_or_else(|| l.err(Code::Undeclared, 1, format!("undeclared generator `{g}`")))?;
                let c = l.ident(2, "a coefficient variable")?;
                let j = position(&sym.coeffs, c)
                    .ok_or_else(|| l.err(Code::Undeclared, 2, format!("undeclared coefficient variable `{c}`")))?;
                l.expect(3, Tok::Eq)?;
                if let Some(prev) = map_seen.insert((kw.to_string(), i, j), l.no) {
                    return Err(l.err(Code::Duplicate, 0, format!("`{kw} {g} {c}` already given on line {prev}")));
                }
                let v = expr::eval(&l.expr_from(4)?, &CoeffDomain { sym: &sym, line: l.no })?;
                if kw == "sigma" {
                    sigma_imgs[i][j] = v;
                } else {
                    delta_imgs[i][j] = v;
                }
                map_line = map_line.max(l.no);
            }
            "rel" => {
                let a = l.ident(1, "a generator")?;
                let ja = position(&sym.gens, a)
                    .ok_or_else(|| l.err(Code::Undeclared, 1, format!("undeclared generator `{a}`")))?;
                let mut k = 2;
                if l.toks.get(k).map(|t| &t.tok) == Some(&Tok::Star) {
                    k += 1;
                }
                let b = l.ident(k, "a generator")?;
                let ib = position(&sym.gens, b)
                    .ok_or_else(|| l.err(Code::Undeclared, k, format!("undeclared generator `{b}`")))?;
                if ja <= ib {
                    return Err(l.err(Code::RelationOrder, 1, "relation must have higher generator first"));
                }
                l.expect(k + 1, Tok::Eq)?;
                if let Some(prev) = rel_lines.insert((ja, ib), l.no) {
                    return Err(l.err(Code::Duplicate, 0, format!("relation `{a} {b}` already given on line {prev}")));
                }
                let words = expr::eval(&l.expr_from(k + 2)?, &FreeDomain { sym: &sym, line: l.no })?;
                let mut rel = Relation { d: CoeffPoly::zero(), r0: CoeffPoly::zero(), r: vec![CoeffPoly::zero(); n] };
                for (c, w) in words {
                    match w.as_slice() {
                        [] => rel.r0 = &rel.r0 + &c,
                        [k] => rel.r[*k] = &rel.r[*k] + &c,
                        [x, y] if *x == ib && *y == ja => rel.d = &rel.d + &c,
                        _ => {
                            let shown: Vec<&str> = w.iter().map(|&g| sym.gens[g].as_str()).collect();
                            return Err(l.err(
                                Code::RelationShape,
                                k + 2,
                                format!(
                                    "word `{}` not allowed; the right side must be d {b} {a} + r0 + linear terms",
                                    shown.join(" ")
                                ),
                            ));
                        }
                    }
                }
                if rel.d.is_zero() {
                    return Err(l.err(Code::ZeroCoefficient, k + 2, format!("coefficient of `{b} {a}` must be nonzero")));
                }
                rels.insert((ja, ib), rel);
            }
            "calculus" => {
                if let Some((_, prev)) = mode {
                    return Err(l.err(Code::Duplicate, 0, format!("calculus already given on line {prev}")));
                }
                let md = match l.ident(1, "`flat` or `theorem`")? {
                    "flat" => Mode::Flat,
                    "theorem" => Mode::Theorem,
                    other => return Err(l.err(Code::Syntax, 1, format!("unknown calculus mode `{other}`"))),
                };
                if l.toks.len() > 2 {
                    return Err(l.err(Code::Syntax, 2, "expected end of line"));
                }
                mode = Some((md, l.no));
                block = Block::Calculus;
            }
            "options" => {
                if l.toks.len() > 1 {
                    return Err(l.err(Code::Syntax, 1, "expected end of line"));
                }
                block = Block::Options;
            }
            "dgen" | "twist" | "inverse" | "wedge" => {
                if block != Block::Calculus {
                    return Err(l.err(Code::Block, 0, format!("`{kw}` outside a calculus block")));
                }
                calc_lines.push(l);
            }
            key if OPTION_KEYS.contains(&key) => {
                if block != Block::Options {
                    return Err(l.err(Code::Block, 0, format!("`{key}` outside an options block")));
                }
                if let Some(prev) = opt_seen.insert(key.to_string(), l.no) {
                    return Err(l.err(Code::Duplicate, 0, format!("`{key}` already given on line {prev}")));
                }
                let v = match l.toks.get(1).map(|t| &t.tok) {
                    Some(Tok::Int(v)) if l.toks.len() == 2 => u64::try_from(v.clone())
                        .map_err(|_| l.err(Code::Invalid, 1, "value out of range"))?,
                    _ => return Err(l.err(Code::Syntax, 1, "expected a single non-negative integer")),
                };
                options.set(key, v);
            }
            "invertible" => unreachable!("rejected above"),
            other => return Err(l.err(Code::Syntax, 0, format!("unknown keyword `{other}`"))),
        }
    }

    let sigma: Vec<CoeffEndo> = sigma_imgs
        .into_iter()
        .map(|imgs| {
            let s = CoeffEndo::new(imgs);
            s.clone().with_affine_inverse().unwrap_or(s)
        })
        .collect();
    let delta: Vec<CoeffSigmaDerivation> =
        delta_imgs.into_iter().zip(&sigma).map(|(d, s)| CoeffSigmaDerivation::new(d, s.clone())).collect();
    let name = name.unwrap_or_else(|| "unnamed".into());
    let pres = Presentation::new(name.clone(), sym, sigma, delta, rels)
        .map_err(|e| Diagnostic::new(Code::Invalid, e.to_string(), map_line, 1))?;
    let algebra = Algebra::new(pres);

    let calculus = match mode {
        None => None,
        Some((md, _)) => Some(build_calculus_doc(&algebra, md, &calc_lines)?),
    };
    Ok(PresentationDoc { name, algebra, calculus, options })
}

fn build_calculus_doc(alg: &Algebra, mode: Mode, lines: &[&Line]) -> Result<CalculusDoc, Diagnostic> {
    let sym = alg.symbols();
    let (m, nc) = (alg.ncoeffs(), alg.ncoords());
    if mode == Mode::Theorem {
        if let Some(l) = lines.first() {
            return Err(l.err(Code::Block, 0, "theorem mode fixes the differentials and twists"));
        }
        // Twists are derived when the calculus is built.
        return Ok(CalculusDoc {
            mode,
            names: sym.gens.iter().map(|g| format!("d{g}")).collect(),
            forms: Vec::new(),
            twists: Vec::new(),
            inverses: Vec::new(),
            wedges: BTreeMap::new(),
            explicit_dgens: false,
        });
    }

    let mut names: Vec<String> = Vec::new();
    let mut forms: Vec<Vec<Scalar>> = Vec::new();
    let dgen_lines: Vec<&&Line> = lines.iter().filter(|l| l.keyword() == Some("dgen")).collect();
    let explicit_dgens = !dgen_lines.is_empty();
    for l in &dgen_lines {
        let nm = l.ident(1, "a differential name")?;
        if names.iter().any(|x| x == nm) || position(&sym.params, nm).is_some() || alg_has_name(sym, nm) {
            return Err(l.err(Code::Duplicate, 1, format!("`{nm}` already declared")));
        }
        l.expect(2, Tok::Eq)?;
        let f = expr::eval(&l.expr_from(3)?, &SkewDomain { alg, line: l.no })?;
        let mut form = vec![Scalar::zero(); nc];
        for (g, a, s) in f.basis_terms() {
            let c = coord_of(g, a, m)
                .ok_or_else(|| l.err(Code::Invalid, 3, "a differential must be a linear form in the coordinates"))?;
            form[c] = s.clone();
        }
        names.push(nm.to_string());
        forms.push(form);
    }
    if !explicit_dgens {
        for c in 0..nc {
            let mut form = vec![Scalar::zero(); nc];
            form[c] = Scalar::one();
            names.push(format!("d{}", alg.coord_name(c)));
            forms.push(form);
        }
    }
    let nd = names.len();
    let coords: Vec<SkewPoly> = (0..nc).map(|c| alg.coord(c)).collect();
    let mut twists = vec![coords.clone(); nd];
    let mut inverses: Vec<Option<Vec<SkewPoly>>> = vec![None; nd];
    let mut twist_seen: BTreeMap<(&str, usize), usize> = BTreeMap::new();
    let mut wedges = BTreeMap::new();
    let dgen_index = |l: &Line, i: usize| -> Result<usize, Diagnostic> {
        let nm = l.ident(i, "a differential name")?;
        position(&names, nm).ok_or_else(|| l.err(Code::Undeclared, i, format!("unknown differential `{nm}`")))
    };
    for l in lines {
        match l.keyword() {
            Some(kw @ ("twist" | "inverse")) => {
                let k = dgen_index(l, 1)?;
                l.expect(2, Tok::Colon)?;
                if let Some(prev) = twist_seen.insert((kw, k), l.no) {
                    return Err(l.err(Code::Duplicate, 0, format!("`{kw} {}` already given on line {prev}", names[k])));
                }
                let target = if kw == "twist" {
                    &mut twists[k]
                } else {
                    inverses[k].insert(coords.clone())
                };
                let mut start = 3;
                let mut assigned = vec![false; nc];
                while start < l.toks.len() {
                    let end = (start..l.toks.len()).find(|&i| l.toks[i].tok == Tok::Comma).unwrap_or(l.toks.len());
                    let cn = l.ident(start, "a coordinate")?;
                    let c = (0..nc)
                        .find(|&c| alg.coord_name(c) == cn)
                        .ok_or_else(|| l.err(Code::Undeclared, start, format!("unknown coordinate `{cn}`")))?;
                    if std::mem::replace(&mut assigned[c], true) {
                        return Err(l.err(Code::Duplicate, start, format!("`{cn}` mapped twice")));
                    }
                    l.expect(start + 1, Tok::Arrow)?;
                    if start + 2 >= end {
                        return Err(l.err(Code::Syntax, start + 2, "expected an expression"));
                    }
                    let end_col = l.col(end);
                    let e = expr::parse_tokens(&l.toks[start + 2..end], l.no, end_col)?;
                    target[c] = expr::eval(&e, &SkewDomain { alg, line: l.no })?;
                    start = end + 1;
                    if end < l.toks.len() && start >= l.toks.len() {
                        return Err(l.err(Code::Syntax, end, "trailing `,`"));
                    }
                }
            }
            Some("wedge") => {
                let a = dgen_index(l, 1)?;
                let b = dgen_index(l, 2)?;
                if a == b {
                    return Err(l.err(Code::Invalid, 2, "a wedge sign needs two different differentials"));
                }
                l.expect(3, Tok::Eq)?;
                let v = expr::eval(&l.expr_from(4)?, &ScalarDomain { params: &sym.params, line: l.no })?;
                if v.is_zero() {
                    return Err(l.err(Code::ZeroCoefficient, 4, "wedge sign must be nonzero"));
                }
                // `wedge da db = λ` with a < b means db∧da = −λ da∧db.
                let key = (a.min(b), a.max(b));
                let v = if a < b { v } else { v.inv().expect("nonzero") };
                if wedges.insert(key, v).is_some() {
                    return Err(l.err(Code::Duplicate, 0, "wedge sign already given for this pair"));
                }
            }
            _ => {}
        }
    }
    Ok(CalculusDoc { mode, names, forms, twists, inverses, wedges, explicit_dgens })
}

fn alg_has_name(sym: &Symbols, s: &str) -> bool {
    sym.coeffs.iter().chain(&sym.gens).any(|x| x == s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const WEYL: &str = "name weyl\ngens x1 x2\nrel x2 x1 = x1 x2 - 1\ncalculus theorem\n";

    #[test]
    fn weyl_document() {
        let d = parse_presentation(WEYL).unwrap();
        assert_eq!(d.name, "weyl");
        let rel = d.algebra.presentation().relation(1, 0);
        assert_eq!(rel.r0, CoeffPoly::from_int(-1));
        let c = d.calculus.unwrap();
        assert_eq!(c.names, vec!["dx1", "dx2"]);
    }

    fn code(text: &str) -> (Code, usize, usize) {
        let e = parse_presentation(text).unwrap_err();
        (e.code, e.line, e.column)
    }

    #[test]
    fn diagnostics() {
        assert_eq!(code("gens x1 x2\nrel x1 x2 = x2 x1"), (Code::RelationOrder, 2, 5));
        assert_eq!(code("gens x1 x2\nrel x2 x1 = q x1 x2").0, Code::Undeclared);
        assert_eq!(code("gens x1 x2\nrel x2 x1 = x2 x1").0, Code::RelationShape);
        assert_eq!(code("params q\ngens x1 x2\nrel x2 x1 = 0*x1 x2 + 1").0, Code::ZeroCoefficient);
        assert_eq!(code("gens x\ndgen dx = x").0, Code::Block);
        assert_eq!(code("gens x\ninvertible x").0, Code::Reserved);
        assert_eq!(code("gens x x").0, Code::Duplicate);
        assert_eq!(code("gens x\ncalculus flat\ntwist dy: x -> x").0, Code::Undeclared);
        assert_eq!(code("gens x\ncalculus theorem\ntwist dx: x -> x").0, Code::Block);
        assert_eq!(code("gens x\noptions\nsamples -1").0, Code::Syntax);
    }

    #[test]
    fn flat_calculus_and_options() {
        let d = parse_presentation(
            "params q\ngens x1 x2\nrel x2 x1 = q*x1 x2\ncalculus flat\ntwist dx1: x2 -> q*x2\n\
             twist dx2: x1 -> x1/q\nwedge dx1 dx2 = q\noptions\nseed 7\n",
        )
        .unwrap();
        assert_eq!(d.options.seed, 7);
        let c = d.calculus.as_ref().unwrap();
        assert_eq!(c.wedges[&(0, 1)], Scalar::param(0));
        let spec = d.calculus_spec().unwrap().unwrap();
        assert!(spec.twists.iter().all(|t| t.has_inverse()));
    }
}
