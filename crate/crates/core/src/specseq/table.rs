use std::collections::BTreeMap;

use serde::Serialize;

use super::engine::Survivor;
use super::rules::Instance;
use super::Grading;
use crate::field::BaseField;
use crate::graded::{Gen, Monomial, Window};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Class {
    pub label: String,
    pub monomial: Option<Monomial>,
    /// Filtration in the spectral sequence that detects the class.
    pub s: i32,
    pub stem: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Alpha,
    Beta,
    Toda,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub kind: EdgeKind,
    pub from: usize,
    pub to: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// E∞ organised by stem, with multiplicative edges between classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyTable {
    pub name: String,
    pub field: BaseField,
    pub classes: Vec<Class>,
    pub edges: Vec<Edge>,
    pub period: Option<i32>,
    pub range: (i32, i32),
}

impl HomotopyTable {
    pub fn new(name: &str, field: BaseField, range: (i32, i32)) -> HomotopyTable {
        HomotopyTable { name: name.into(), field, classes: Vec::new(), edges: Vec::new(), period: None, range }
    }

    /// Classes of `survivors` inside `window`, with α and β edges.
    pub fn from_survivors<G: Grading>(
        name: &str,
        field: BaseField,
        grading: &G,
        survivors: &[Survivor<G::Key>],
        window: &Window,
    ) -> HomotopyTable {
        let mut t = HomotopyTable::new(name, field, (window.lo, window.hi));
        for sv in survivors {
            let (s, stem) = grading.position(sv.key);
            if window.contains(s, stem + s) {
                t.classes.push(Class { label: sv.label.clone(), monomial: sv.monomial, s, stem, note: None });
            }
        }
        t.sort();
        t.add_product_edges();
        t
    }

    fn sort(&mut self) {
        self.classes.sort_by(|a, b| (a.stem, a.s, &a.monomial, &a.label).cmp(&(b.stem, b.s, &b.monomial, &b.label)));
    }

    fn by_monomial(&self) -> BTreeMap<Monomial, usize> {
        self.classes.iter().enumerate().filter_map(|(i, c)| c.monomial.map(|m| (m, i))).collect()
    }

    /// Edges for multiplication by α and β between classes with monomial
    /// representatives.
    pub fn add_product_edges(&mut self) {
        let idx = self.by_monomial();
        for (kind, g) in [(EdgeKind::Alpha, Gen::Alpha), (EdgeKind::Beta, Gen::Beta)] {
            let gm = Monomial::gen(g);
            for (i, c) in self.classes.iter().enumerate() {
                let Some(m) = c.monomial else { continue };
                if let Some((_, p)) = m.mul(&gm) {
                    if let Some(&j) = idx.get(&p) {
                        self.edges.push(Edge { kind, from: i, to: j, note: None });
                    }
                }
            }
        }
    }

    /// Hidden extensions from the Toda bracket ⟨α, α, β²c⟩: when
    /// d5(x) = ±αβ²c and both αx and β³c survive, αx is joined to β³c.
    pub fn add_toda_edges(&mut self, instances: &[Instance]) {
        let idx = self.by_monomial();
        let alpha = Monomial::gen(Gen::Alpha);
        for x in instances.iter().filter(|x| x.page == 5) {
            let t = x.target;
            if t.exp(Gen::Alpha) != 1 || t.exp(Gen::Beta) < 2 {
                continue;
            }
            let c = t.without(Gen::Alpha).with(Gen::Beta, t.exp(Gen::Beta) - 2);
            let Some((_, ax)) = x.source.mul(&alpha) else { continue };
            let b3c = c.with(Gen::Beta, c.exp(Gen::Beta) + 3);
            if let (Some(&i), Some(&j)) = (idx.get(&ax), idx.get(&b3c)) {
                let note = format!("<alpha,alpha,beta^2*{c}>").replace("*1>", ">");
                self.classes[i].note = Some(format!("z{}", x.i.rem_euclid(9)));
                self.edges.push(Edge { kind: EdgeKind::Toda, from: i, to: j, note: Some(note) });
            }
        }
    }

    pub fn dim_multiplier(&self) -> usize {
        self.field.degree()
    }

    /// F3-dimension of the table in each stem of its range.
    pub fn dims_by_stem(&self) -> BTreeMap<i32, usize> {
        let mut out: BTreeMap<i32, usize> = (self.range.0..=self.range.1).map(|n| (n, 0)).collect();
        for c in &self.classes {
            *out.entry(c.stem).or_insert(0) += self.dim_multiplier();
        }
        out
    }

    pub fn dim(&self, stem: i32) -> usize {
        self.classes.iter().filter(|c| c.stem == stem).count() * self.dim_multiplier()
    }

    pub fn classes_at(&self, stem: i32) -> impl Iterator<Item = &Class> {
        self.classes.iter().filter(move |c| c.stem == stem)
    }

    pub fn find(&self, label: &str) -> Option<&Class> {
        self.classes.iter().find(|c| c.label == label)
    }

    /// `Λ(x) ⊗ self` for an exterior class x of the given stem, placed one
    /// filtration higher.
    pub fn tensor_with_exterior(&self, name: &str, gen: &str, stem: i32) -> HomotopyTable {
        let mut t = HomotopyTable::new(name, self.field, self.range);
        t.period = self.period;
        t.classes = self.classes.clone();
        let g: Option<Monomial> = gen.parse().ok();
        for c in &self.classes {
            let monomial = match (g, c.monomial) {
                (Some(g), Some(m)) => m.mul(&g).map(|(_, p)| p),
                _ => None,
            };
            let label = monomial.map_or_else(|| format!("{gen}*{}", c.label), |m| m.to_string());
            let moved = Class { label, monomial, s: c.s + 1, stem: c.stem + stem, note: c.note.clone() };
            if (self.range.0..=self.range.1).contains(&moved.stem) {
                t.classes.push(moved);
            }
        }
        t.sort();
        t.add_product_edges();
        t
    }

    /// First stem n with dim(n) ≠ dim(n + period), both in the range.
    pub fn check_periodicity(&self, period: i32) -> Result<(), i32> {
        let dims = self.dims_by_stem();
        for (&n, &d) in &dims {
            if let Some(&e) = dims.get(&(n + period)) {
                if d != e {
                    return Err(n);
                }
            }
        }
        Ok(())
    }

    /// First stem m with dim(m) ≠ dim(centre − m), both in the range.
    /// Self-duality of the form Σ^{-c} X ≃ D X gives centre c.
    pub fn check_self_duality(&self, centre: i32) -> Result<(), i32> {
        let dims = self.dims_by_stem();
        for (&m, &d) in &dims {
            if let Some(&e) = dims.get(&(centre - m)) {
                if d != e {
                    return Err(m);
                }
            }
        }
        Ok(())
    }

    /// Drops classes outside `lo..=hi`.
    pub fn restrict(&self, lo: i32, hi: i32) -> HomotopyTable {
        let mut t = HomotopyTable::new(&self.name, self.field, (lo, hi));
        t.period = self.period;
        t.classes = self.classes.iter().filter(|c| (lo..=hi).contains(&c.stem)).cloned().collect();
        t.add_product_edges();
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(label: &str, s: i32) -> Class {
        let m: Monomial = label.parse().unwrap();
        Class { label: label.into(), monomial: Some(m), s, stem: m.stem(), note: None }
    }

    fn toy() -> HomotopyTable {
        let mut t = HomotopyTable::new("toy", BaseField::F3, (0, 20));
        t.classes = vec![class("1", 0), class("alpha", 1), class("beta", 2), class("alpha*beta", 3)];
        t.add_product_edges();
        t
    }

    #[test]
    fn product_edges() {
        let t = toy();
        let alpha: Vec<_> = t.edges.iter().filter(|e| e.kind == EdgeKind::Alpha).collect();
        let beta: Vec<_> = t.edges.iter().filter(|e| e.kind == EdgeKind::Beta).collect();
        assert_eq!((alpha.len(), beta.len()), (2, 2));
    }

    #[test]
    fn exterior_copy_and_duality() {
        let t = toy();
        let v = t.tensor_with_exterior("toy(zeta)", "zeta", -1);
        assert_eq!(v.classes.len(), 7);
        assert!(v.find("zeta").is_none(), "zeta at stem -1 is out of range");
        assert_eq!(v.dim(9), 1);
        assert!(t.check_periodicity(100).is_ok());
        assert!(t.check_self_duality(13).is_ok());
        assert_eq!(t.check_self_duality(12), Err(0));
    }
}
