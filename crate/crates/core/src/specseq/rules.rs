//! Line-oriented differential rules, e.g.
//!
//! ```text
//! d5 w^(i+3) -> - alpha*beta^2*w^i  where i mod 9 in {0,1,2,3,4,5}  linear beta,w^9
//! ```
//!
//! A rule has one free integer `i`, an optional congruence condition on an
//! affine expression in `i`, and a list of multipliers the differential is
//! linear over. `#` starts a comment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::SpecSeqError;
use crate::field::F3;
use crate::graded::{Gen, GenKind, Monomial, Window};

/// `a·i + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Affine {
    pub a: i32,
    pub b: i32,
}

impl Affine {
    pub fn eval(self, i: i32) -> i32 {
        self.a * i + self.b
    }

    fn parse(text: &str) -> Option<Affine> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(&s).to_string();
        if let Ok(b) = s.parse() {
            return Some(Affine { a: 0, b });
        }
        let pos = s.find('i')?;
        let (coef, rest) = (&s[..pos], &s[pos + 1..]);
        let a = match coef.trim_end_matches('*') {
            "" | "+" => 1,
            "-" => -1,
            c => c.parse().ok()?,
        };
        let b = if rest.is_empty() { 0 } else { rest.strip_prefix('+').unwrap_or(rest).parse().ok()? };
        Some(Affine { a, b })
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lin = match self.a {
            0 => return write!(f, "{}", self.b),
            1 => "i".to_string(),
            -1 => "-i".to_string(),
            a => format!("{a}i"),
        };
        match self.b {
            0 if self.a == 1 => f.write_str("i"),
            0 => write!(f, "({lin})"),
            b if b > 0 => write!(f, "({lin}+{b})"),
            b => write!(f, "({lin}{b})"),
        }
    }
}

/// An ordered product of generator powers with affine exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pattern {
    pub factors: Vec<(Gen, Affine)>,
}

impl Pattern {
    fn parse(text: &str) -> Result<Pattern, String> {
        let text = text.trim();
        if text == "1" {
            return Ok(Pattern { factors: vec![] });
        }
        let mut factors = Vec::new();
        for f in text.split('*').map(str::trim) {
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => (n.trim(), Affine::parse(e).ok_or_else(|| format!("bad exponent in `{f}`"))?),
                None => (f, Affine { a: 0, b: 1 }),
            };
            let g = Gen::from_name(name).ok_or_else(|| format!("unknown generator `{name}`"))?;
            factors.push((g, exp));
        }
        Ok(Pattern { factors })
    }

    /// The signed normal form at `i`; `None` if it vanishes or leaves the ring.
    pub fn at(&self, i: i32) -> Option<(F3, Monomial)> {
        let mut acc = (F3::ONE, Monomial::one());
        for &(g, e) in &self.factors {
            let k = e.eval(i);
            if k < 0 && g.kind() != GenKind::InvertiblePolynomial {
                return None;
            }
            let (s, m) = acc.1.mul(&Monomial::one().with(g, k))?;
            acc = (acc.0 * s, m);
        }
        Some(acc)
    }

    /// Change in (s, t) per unit step of `i`.
    pub fn slope(&self) -> (i32, i32) {
        self.factors.iter().fold((0, 0), |(s, t), &(g, e)| {
            let (gs, gt) = g.bidegree();
            (s + e.a * gs, t + e.a * gt)
        })
    }

    /// (s, t) at `i` before normalization (normalization preserves bidegree).
    pub fn bidegree_at(&self, i: i32) -> (i32, i32) {
        self.factors.iter().fold((0, 0), |(s, t), &(g, e)| {
            let (gs, gt) = g.bidegree();
            (s + e.eval(i) * gs, t + e.eval(i) * gt)
        })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(g, e)| if e == (Affine { a: 0, b: 1 }) { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub expr: Affine,
    pub modulus: i32,
    pub residues: BTreeSet<i32>,
}

impl Condition {
    pub fn holds(&self, i: i32) -> bool {
        self.residues.contains(&self.expr.eval(i).rem_euclid(self.modulus))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialRule {
    pub page: i32,
    pub source: Pattern,
    pub target: Pattern,
    pub sign: F3Sign,
    pub condition: Option<Condition>,
    pub multipliers: Vec<Monomial>,
    pub line: usize,
}

/// Serializable ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum F3Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl F3Sign {
    pub fn value(self) -> F3 {
        match self {
            F3Sign::Plus => F3::ONE,
            F3Sign::Minus => F3::MINUS_ONE,
        }
    }
}

impl fmt::Display for DifferentialRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign == F3Sign::Minus { "- " } else { "" };
        write!(f, "d{} {} -> {}{}", self.page, self.source, sign, self.target)?;
        if let Some(c) = &self.condition {
            let res: Vec<String> = c.residues.iter().map(i32::to_string).collect();
            let expr = if c.expr == (Affine { a: 1, b: 0 }) { "i".to_string() } else { c.expr.to_string() };
            write!(f, "  where {expr} mod {} in {{{}}}", c.modulus, res.join(","))?;
        }
        if !self.multipliers.is_empty() {
            let ms: Vec<String> = self.multipliers.iter().map(Monomial::to_string).collect();
            write!(f, "  linear {}", ms.join(","))?;
        }
        Ok(())
    }
}

fn parse_condition(text: &str) -> Result<Condition, String> {
    // "<expr> mod <m> in {r, ...}"
    let (lhs, set) = text.split_once(" in ").ok_or("condition needs `in {...}`")?;
    let (expr, modulus) = lhs.split_once(" mod ").ok_or("condition needs `mod`")?;
    let expr = Affine::parse(expr).ok_or_else(|| format!("bad expression `{expr}`"))?;
    let modulus: i32 = modulus.trim().parse().map_err(|_| format!("bad modulus `{modulus}`"))?;
    if modulus <= 0 {
        return Err("modulus must be positive".into());
    }
    let inner = set.trim().strip_prefix('{').and_then(|s| s.strip_suffix('}')).ok_or("residues need braces")?;
    let mut residues = BTreeSet::new();
    for r in inner.split(',').map(str::trim).filter(|r| !r.is_empty()) {
        if let Some((a, b)) = r.split_once("..") {
            let (a, b): (i32, i32) = (a.trim().parse().map_err(|_| "bad range")?, b.trim().parse().map_err(|_| "bad range")?);
            residues.extend((a..=b).map(|x| x.rem_euclid(modulus)));
        } else {
            let x: i32 = r.parse().map_err(|_| format!("bad residue `{r}`"))?;
            residues.insert(x.rem_euclid(modulus));
        }
    }
    Ok(Condition { expr, modulus, residues })
}

fn parse_line(line: &str, lineno: usize) -> Result<DifferentialRule, String> {
    let line = line.replace('±', "");
    let (head, rest) = line.split_once("->").ok_or("missing `->`")?;
    let head = head.trim();
    let page_end = head.find(char::is_whitespace).ok_or("missing source")?;
    let page: i32 = head[..page_end]
        .strip_prefix('d')
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| format!("bad page `{}`", &head[..page_end]))?;
    if page < 1 {
        return Err("page must be positive".into());
    }
    let source = Pattern::parse(&head[page_end..])?;

    let (rest, linear) = match rest.split_once(" linear ") {
        Some((a, b)) => (a, Some(b)),
        None => (rest, None),
    };
    let (target, cond) = match rest.split_once(" where ") {
        Some((a, b)) => (a, Some(b)),
        None => (rest, None),
    };
    let mut target = target.trim();
    let mut sign = F3Sign::Plus;
    if let Some(t) = target.strip_prefix('-') {
        sign = F3Sign::Minus;
        target = t.trim();
    } else if let Some(t) = target.strip_prefix('+') {
        target = t.trim();
    }
    let target = Pattern::parse(target)?;
    let condition = cond.map(|c| parse_condition(c.trim())).transpose()?;
    let mut multipliers = Vec::new();
    if let Some(l) = linear {
        for m in l.split(',').map(str::trim).filter(|m| !m.is_empty()) {
            multipliers.push(m.parse::<Monomial>().map_err(|e| e.to_string())?);
        }
    }
    Ok(DifferentialRule { page, source, target, sign, condition, multipliers, line: lineno })
}

pub fn parse_rules(text: &str) -> Result<Vec<DifferentialRule>, SpecSeqError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_line(line, n + 1).map_err(|msg| SpecSeqError::Parse { line: n + 1, msg })?);
    }
    Ok(out)
}

/// One concrete differential `d_r(source) = coeff · target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub page: i32,
    pub source: Monomial,
    pub target: Monomial,
    pub coeff: i8,
    pub rule: usize,
    pub i: i32,
}

impl Instance {
    pub fn coefficient(&self) -> F3 {
        F3::new(self.coeff as i64)
    }
}

impl DifferentialRule {
    pub fn with_multiplier(mut self, m: Monomial) -> DifferentialRule {
        if !self.multipliers.contains(&m) {
            self.multipliers.push(m);
        }
        self
    }

    /// All instances whose source lies in `window` (monomial bidegrees,
    /// stems on the window axis).
    pub fn instances(&self, index: usize, window: &Window) -> Result<Vec<Instance>, SpecSeqError> {
        let (ds, dt) = self.source.slope();
        let dstem = dt - ds;
        if dstem == 0 {
            return Err(SpecSeqError::Rule {
                line: self.line,
                msg: "the free exponent must change the stem".into(),
            });
        }
        // multiplier products within the window
        let mut bounded = Vec::new();
        let mut periodic = Vec::new();
        for m in &self.multipliers {
            let (s, t) = m.bidegree();
            let invertible = m.factors().all(|(g, _)| g.kind() == GenKind::InvertiblePolynomial);
            let exterior = m.factors().any(|(g, _)| g.kind() == GenKind::Exterior);
            if exterior {
                bounded.push((*m, 1));
            } else if s > 0 {
                bounded.push((*m, (window.s_max - window.s_min.min(0)) / s + 1));
            } else if invertible && t != 0 {
                periodic.push((*m, window.span() / (t - s).abs().max(1) + 2));
            } else {
                return Err(SpecSeqError::Rule { line: self.line, msg: format!("multiplier {m} is unbounded") });
            }
        }
        let mut combos = vec![(F3::ONE, Monomial::one())];
        for &(m, max) in &bounded {
            let mut next = Vec::new();
            for &(s, c) in &combos {
                let mut cur = Some((s, c));
                for _ in 0..=max {
                    let Some((cs, cm)) = cur else { break };
                    next.push((cs, cm));
                    cur = cm.mul(&m).map(|(x, y)| (cs * x, y));
                }
            }
            combos = next;
        }
        for &(m, max) in &periodic {
            let mut next = Vec::new();
            for &(s, c) in &combos {
                for n in -max..=max {
                    let pw = m.factors().fold(Monomial::one(), |acc, (g, e)| acc.with(g, e * n));
                    if let Some((x, y)) = c.mul(&pw) {
                        next.push((s * x, y));
                    }
                }
            }
            combos = next;
        }

        let (s0, t0) = self.source.bidegree_at(0);
        let stem0 = t0 - s0;
        let mut out = Vec::new();
        for &(bs, b) in &combos {
            let c = stem0 + b.stem();
            let (lo, hi) = match window.axis {
                crate::graded::Axis::Stem => (window.lo, window.hi),
                // t-windows: bound stems generously by the s-range
                crate::graded::Axis::T => (window.lo - window.s_max, window.hi),
            };
            let (mut ilo, mut ihi) = ((lo - c).div_euclid(dstem), (hi - c).div_euclid(dstem) + 1);
            if ilo > ihi {
                std::mem::swap(&mut ilo, &mut ihi);
            }
            for i in ilo - 1..=ihi + 1 {
                if let Some(cond) = &self.condition {
                    if !cond.holds(i) {
                        continue;
                    }
                }
                let Some((ss, sm)) = self.source.at(i) else { continue };
                let Some((sb, src)) = sm.mul(&b) else { continue };
                if !window.contains(src.s(), src.t()) {
                    continue;
                }
                let Some((ts, tm)) = self.target.at(i) else { continue };
                let Some((tb, tgt)) = tm.mul(&b) else { continue };
                let coeff = self.sign.value() * ss * sb * ts * tb * bs * bs;
                out.push(Instance { page: self.page, source: src, target: tgt, coeff: coeff.value(), rule: index, i });
            }
        }
        Ok(out)
    }
}

/// Instances of all rules in `window`, deduplicated. Two rules producing
/// different targets for the same source on the same page is an error.
pub fn instantiate(rules: &[DifferentialRule], window: &Window) -> Result<Vec<Instance>, SpecSeqError> {
    let mut seen: BTreeMap<(i32, Monomial), Instance> = BTreeMap::new();
    for (k, rule) in rules.iter().enumerate() {
        for inst in rule.instances(k, window)? {
            match seen.get(&(inst.page, inst.source)) {
                Some(prev) if prev.target != inst.target || prev.coeff != inst.coeff => {
                    return Err(SpecSeqError::Conflict {
                        label: inst.source.to_string(),
                        first: rules[prev.rule].line,
                        second: rule.line,
                    });
                }
                Some(_) => {}
                None => {
                    seen.insert((inst.page, inst.source), inst);
                }
            }
        }
    }
    Ok(seen.into_values().collect())
}
