use std::collections::BTreeMap;

use serde::Serialize;

use super::rules::Instance;
use super::Grading;
use crate::field::{BaseField, Field};
use crate::graded::{lift, Monomial, Window};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Report instances whose source or target is missing or already dead.
    /// Without it such instances are silently dropped.
    pub strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IssueKind {
    AbsentSource,
    AbsentTarget,
    SourceNotAlive,
    TargetNotAlive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub page: i32,
    pub kind: IssueKind,
    pub source: String,
    pub target: String,
}

/// A basis element of E∞ at one key.
#[derive(Clone, Debug)]
pub struct Survivor<K> {
    pub key: K,
    pub label: String,
    /// Set when the class is represented by a single E2 monomial.
    pub monomial: Option<Monomial>,
}

struct Slot<F> {
    basis: Vec<Monomial>,
    z: Subspace<F>,
    b: Subspace<F>,
}

pub struct SpectralSequence<F, G: Grading> {
    pub name: String,
    pub field: BaseField,
    pub grading: G,
    pub window: Window,
    pub page: i32,
    slots: BTreeMap<G::Key, Slot<F>>,
    index: BTreeMap<Monomial, (G::Key, usize)>,
    /// Number of nonzero differentials (rank) per page.
    pub ranks: BTreeMap<i32, usize>,
}

impl<F: Field, G: Grading> SpectralSequence<F, G> {
    pub fn new(
        name: &str,
        field: BaseField,
        grading: G,
        first_page: i32,
        window: Window,
        labels: impl IntoIterator<Item = Monomial>,
    ) -> Self {
        let mut by_key: BTreeMap<G::Key, Vec<Monomial>> = BTreeMap::new();
        for m in labels {
            by_key.entry(grading.key(&m)).or_default().push(m);
        }
        let mut slots = BTreeMap::new();
        let mut index = BTreeMap::new();
        for (k, mut basis) in by_key {
            basis.sort();
            basis.dedup();
            for (i, m) in basis.iter().enumerate() {
                index.insert(*m, (k, i));
            }
            let n = basis.len();
            slots.insert(k, Slot { basis, z: Subspace::full(n), b: Subspace::zero(n) });
        }
        SpectralSequence { name: name.into(), field, grading, window, page: first_page, slots, index, ranks: BTreeMap::new() }
    }

    fn in_window(&self, key: G::Key) -> bool {
        let (s, stem) = self.grading.position(key);
        self.window.contains(s, stem + s)
    }

    fn unit(&self, m: &Monomial) -> Option<(G::Key, Vec<F>)> {
        let &(k, i) = self.index.get(m)?;
        let mut v = vec![F::zero(); self.slots[&k].basis.len()];
        v[i] = F::one();
        Some((k, v))
    }

    /// Dimension of the current page at `key`.
    pub fn dim(&self, key: G::Key) -> usize {
        self.slots.get(&key).map_or(0, |s| s.z.dimension() - s.b.dimension())
    }

    pub fn keys(&self) -> impl Iterator<Item = G::Key> + '_ {
        self.slots.keys().copied()
    }

    /// Applies the differentials of pages `self.page ..= last_page`.
    pub fn run(&mut self, instances: &[Instance], last_page: i32, opts: &RunOptions) -> Vec<Issue> {
        let mut issues = Vec::new();
        while self.page <= last_page {
            let r = self.page;
            let page: Vec<&Instance> = instances.iter().filter(|x| x.page == r).collect();
            issues.extend(self.apply_page(r, &page, opts));
            self.page += 1;
        }
        issues
    }

    fn apply_page(&mut self, r: i32, instances: &[&Instance], opts: &RunOptions) -> Vec<Issue> {
        let mut issues = Vec::new();
        let issue = |kind, x: &Instance| Issue { page: r, kind, source: x.source.to_string(), target: x.target.to_string() };
        // d_r as images of unit vectors, grouped by source key
        let mut maps: BTreeMap<G::Key, (G::Key, Vec<(usize, Vec<F>)>)> = BTreeMap::new();
        for &x in instances {
            let Some((sk, sv)) = self.unit(&x.source) else {
                if opts.strict && self.in_window(self.grading.key(&x.source)) {
                    issues.push(issue(IssueKind::AbsentSource, x));
                }
                continue;
            };
            let tk = self.grading.target(sk, r);
            let Some((k2, tv)) = self.unit(&x.target) else {
                if opts.strict && self.in_window(tk) {
                    issues.push(issue(IssueKind::AbsentTarget, x));
                }
                continue;
            };
            debug_assert_eq!(k2, tk, "rule instance with wrong shift");
            let slot = &self.slots[&sk];
            if opts.strict && (!slot.z.contains(&sv) || slot.b.contains(&sv)) {
                issues.push(issue(IssueKind::SourceNotAlive, x));
            }
            let tslot = &self.slots[&tk];
            if opts.strict && (!tslot.z.contains(&tv) || tslot.b.contains(&tv)) {
                issues.push(issue(IssueKind::TargetNotAlive, x));
            }
            let c: F = lift(x.coefficient());
            let i = sv.iter().position(|v| !v.is_zero()).expect("unit vector");
            let entry = maps.entry(sk).or_insert_with(|| (tk, Vec::new()));
            entry.1.push((i, tv.into_iter().map(|v| v * c).collect()));
        }

        let mut new_z = BTreeMap::new();
        let mut new_b: BTreeMap<G::Key, Vec<Vec<F>>> = BTreeMap::new();
        let mut rank = 0;
        for (sk, (tk, cols)) in &maps {
            let slot = &self.slots[sk];
            let tslot = &self.slots[tk];
            let n = slot.basis.len();
            let m = tslot.basis.len();
            let mut d = vec![vec![F::zero(); m]; n];
            for (i, img) in cols {
                d[*i] = img.clone();
            }
            let d = Matrix::from_columns(m, &d);
            let zb: Vec<Vec<F>> = slot.z.basis().to_vec();
            let images: Vec<Vec<F>> = zb.iter().map(|z| d.apply(z)).collect();
            // z with d z ∈ B_r(target) survive to Z_{r+1}
            let reduced: Vec<Vec<F>> = images.iter().map(|y| tslot.b.reduce(y)).collect();
            let rm = Matrix::from_columns(m, &reduced);
            let kernel = rm.kernel();
            let survivors: Vec<Vec<F>> = kernel
                .iter()
                .map(|c| {
                    let mut v = vec![F::zero(); n];
                    for (coef, z) in c.iter().zip(&zb) {
                        for (a, b) in v.iter_mut().zip(z) {
                            *a = *a + *coef * *b;
                        }
                    }
                    v
                })
                .collect();
            let z = Subspace::span(n, &survivors).sum(&slot.b);
            rank += slot.z.dimension() - z.dimension();
            new_z.insert(*sk, z);
            new_b.entry(*tk).or_default().extend(images);
        }
        for (k, z) in new_z {
            self.slots.get_mut(&k).expect("slot").z = z;
        }
        for (k, imgs) in new_b {
            let slot = self.slots.get_mut(&k).expect("slot");
            slot.b = slot.b.sum(&Subspace::span(slot.basis.len(), &imgs));
        }
        if rank > 0 {
            self.ranks.insert(r, rank);
        }
        issues
    }

    /// Whether the E_start class `m` is still a nonzero class on the current page.
    pub fn is_alive(&self, m: &Monomial) -> bool {
        self.unit(m).is_some_and(|(k, v)| {
            let slot = &self.slots[&k];
            slot.z.contains(&v) && !slot.b.contains(&v)
        })
    }

    /// Whether `m` has been hit by a differential.
    pub fn is_boundary(&self, m: &Monomial) -> bool {
        self.unit(m).is_some_and(|(k, v)| self.slots[&k].b.contains(&v))
    }

    /// A basis of the current page, one entry per class, in key order.
    pub fn survivors(&self) -> Vec<Survivor<G::Key>> {
        let mut out = Vec::new();
        for (k, slot) in &self.slots {
            for v in slot.b.complement_in(&slot.z) {
                let nz: Vec<(usize, F)> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, *c)).collect();
                let monomial = if nz.len() == 1 { Some(slot.basis[nz[0].0]) } else { None };
                let label = match monomial {
                    Some(m) => m.to_string(),
                    None => nz
                        .iter()
                        .map(|(i, c)| if c.is_one() { slot.basis[*i].to_string() } else { format!("({c})*{}", slot.basis[*i]) })
                        .collect::<Vec<_>>()
                        .join(" + "),
                };
                out.push(Survivor { key: *k, label, monomial });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::F3;
    use crate::specseq::{instantiate, parse_rules, Hfpss};

    fn labels(text: &[&str]) -> Vec<Monomial> {
        text.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn a_single_differential_kills_both_ends() {
        // d5(w^3) = αβ² with w^3 = -w v2
        let e2 = labels(&["w*v2", "alpha*beta^2", "beta"]);
        let rules = parse_rules("d5 w^(i+3) -> alpha*beta^2*w^i  where i mod 9 in {0}").unwrap();
        let win = Window::stems(-10, 40, 12);
        let inst = instantiate(&rules, &win).unwrap();
        let mut ss = SpectralSequence::<F3, Hfpss>::new("t", BaseField::F3, Hfpss, 2, win, e2);
        let issues = ss.run(&inst, 9, &RunOptions { strict: true });
        let left: Vec<String> = ss.survivors().into_iter().map(|s| s.label).collect();
        assert_eq!(left, vec!["beta".to_string()]);
        // w^12 = v2^6 and its target are absent from this toy E2
        assert!(issues.iter().all(|i| i.kind == IssueKind::AbsentSource));
        assert_eq!(ss.ranks[&5], 1);
    }

    #[test]
    fn two_sources_one_target_leave_a_cycle() {
        let e2 = labels(&["w*v2", "v2h*v2", "alpha*beta^2"]);
        let text = "d5 w^(i+3) -> alpha*beta^2*w^i  where i mod 9 in {0}\nd5 v2h^(i+3) -> alpha*beta^2*w^i  where i mod 9 in {0}";
        let rules = parse_rules(text).unwrap();
        let win = Window::stems(-10, 30, 12);
        let inst = instantiate(&rules, &win).unwrap();
        let mut ss = SpectralSequence::<F3, Hfpss>::new("t", BaseField::F3, Hfpss, 2, win, e2);
        ss.run(&inst, 9, &RunOptions::default());
        let left = ss.survivors();
        assert_eq!(left.len(), 1);
        assert!(left[0].monomial.is_none(), "{}", left[0].label);
    }
}
