//! Words `α ⊗ γ_1 ⊗ … ⊗ γ_n ⊗ x` and the operators that build enriched differentials and maps.
//!
//! Each operator inserts cocycle entries into the algebra slots and a final
//! collapse applies `ν_{n+1}` (or `φ_{n+1}`) to the module element and slots.

use crate::cocycle::TwistingCocycle;
use crate::graded::{Lin, Truncation};
use crate::module::{sign, AInfMorphism, CoefficientModule};
use crate::ring::Ring;
use crate::graded::Elem;
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub m: usize,
    pub algs: Vec<usize>,
    pub x: usize,
}

pub type Words<E> = Lin<Word, E>;

/// Chains of an enriched complex, keyed by `(module basis, critical point)`.
pub type Chain<E> = Lin<(usize, usize), E>;

pub fn words_of<E: Clone>(c: &Chain<E>) -> Words<E> {
    c.iter().map(|(&(m, x), e)| (Word { m, algs: Vec::new(), x }, e.clone())).collect()
}

fn prefix_degree<R: Ring>(module: &CoefficientModule<R>, w: &Word) -> i64 {
    module.basis.degree(w.m) as i64 + w.algs.iter().map(|&g| module.dga.basis.degree(g) as i64).sum::<i64>()
}

/// Replaces the trailing point `x` by `Σ_y e_{x,y} ⊗ y`, optionally signed by `(−1)^{|α|+Σ|γ|}`.
pub fn insert<'a, R: Ring>(
    module: &CoefficientModule<R>,
    w: &Words<R::Elem>,
    row: impl Fn(usize) -> Vec<(usize, &'a Elem<R::Elem>)>,
    signed: bool,
) -> Words<R::Elem> {
    let ring = module.ring();
    let mut out = Words::new();
    for (word, c) in w.iter() {
        let coeff = if signed { ring.mul(c, &sign(ring, prefix_degree(module, word))) } else { c.clone() };
        for (y, e) in row(word.x) {
            for (g, a) in e.iter() {
                let mut algs = word.algs.clone();
                algs.push(*g);
                out.add_term(ring, Word { m: word.m, algs, x: y }, ring.mul(&coeff, a));
            }
        }
    }
    out
}

/// `m̃`: append `m_{x,y}` with sign `(−1)^{|α|+Σ|γ|}`.
pub fn m_tilde<R: Ring>(module: &CoefficientModule<R>, m: &TwistingCocycle<R>, w: &Words<R::Elem>) -> Words<R::Elem> {
    insert(module, w, |x| m.row(x).collect(), true)
}

/// `(ν_{n+1} ⊗ 1)` on words with `n` algebra slots.
pub fn collapse_nu<R: Ring>(module: &CoefficientModule<R>, w: &Words<R::Elem>, trunc: &mut Truncation) -> Chain<R::Elem> {
    let ring = module.ring();
    let mut out = Chain::new();
    for (word, c) in w.iter() {
        let mut key = vec![word.m];
        key.extend_from_slice(&word.algs);
        for (i, e) in module.nu_basis(&key, trunc).iter() {
            out.add_term(ring, (*i, word.x), ring.mul(c, e));
        }
    }
    out
}

/// `(φ_{n+1} ⊗ 1)` on words with `n` algebra slots.
pub fn collapse_phi<R: Ring>(phi: &AInfMorphism<R>, w: &Words<R::Elem>, trunc: &mut Truncation) -> Chain<R::Elem> {
    let ring = phi.source.ring();
    let mut out = Chain::new();
    for (word, c) in w.iter() {
        let mut key = vec![word.m];
        key.extend_from_slice(&word.algs);
        for (i, e) in phi.phi_basis(&key, trunc).iter() {
            out.add_term(ring, (*i, word.x), ring.mul(c, e));
        }
    }
    out
}

/// `Σ_n (collapse ⊗ 1) m̃ⁿ`.
pub fn expand<R: Ring>(
    module: &CoefficientModule<R>,
    m: &TwistingCocycle<R>,
    start: Words<R::Elem>,
    mut collapse: impl FnMut(&Words<R::Elem>) -> Chain<R::Elem>,
) -> Chain<R::Elem> {
    let ring = module.ring();
    let mut out = Chain::new();
    let mut w = start;
    while !w.is_empty() {
        out.add_lin(ring, &collapse(&w));
        w = m_tilde(module, m, &w);
    }
    out
}

/// The enriched differential `Σ_n (ν_{n+1} ⊗ 1) m̃ⁿ`.
pub fn differential<R: Ring>(
    module: &CoefficientModule<R>,
    m: &TwistingCocycle<R>,
    c: &Chain<R::Elem>,
    trunc: &mut Truncation,
) -> Chain<R::Elem> {
    expand(module, m, words_of(c), |w| collapse_nu(module, w, trunc))
}

/// `Σ_u ε_u (collapse ⊗ 1) m̃₁^{n−u} ĩ m̃₀^{u−1}` where `ĩ` inserts the middle entries.
pub fn sandwich<'a, R: Ring>(
    module: &CoefficientModule<R>,
    m0: &TwistingCocycle<R>,
    m1: &TwistingCocycle<R>,
    c: &Chain<R::Elem>,
    middle: impl Fn(usize) -> Vec<(usize, &'a Elem<R::Elem>)>,
    signed_middle: bool,
    alternate: bool,
    mut collapse: impl FnMut(&Words<R::Elem>) -> Chain<R::Elem>,
) -> Chain<R::Elem> {
    let ring = module.ring();
    let mut out = Chain::new();
    let mut pre = words_of(c);
    let mut u = 1i64;
    while !pre.is_empty() {
        let mid = insert(module, &pre, &middle, signed_middle);
        let part = expand(module, m1, mid, &mut collapse);
        let s = if alternate { sign(ring, u - 1) } else { ring.one() };
        out.add_scaled(ring, &s, &part);
        pre = m_tilde(module, m0, &pre);
        u += 1;
    }
    out
}

/// `(1^{⊗r} ⊗ μ₁ ⊗ 1)` on the `r`-th algebra slot, with the Koszul sign of the prefix.
pub fn mu1_at<R: Ring>(module: &CoefficientModule<R>, w: &Words<R::Elem>, r: usize) -> Words<R::Elem> {
    let ring = module.ring();
    let mut out = Words::new();
    for (word, c) in w.iter() {
        if r == 0 || r > word.algs.len() {
            continue;
        }
        let prefix = Word { m: word.m, algs: word.algs[..r - 1].to_vec(), x: word.x };
        let c = ring.mul(c, &sign(ring, prefix_degree(module, &prefix)));
        for (g, a) in module.dga.d_basis(word.algs[r - 1]).iter() {
            let mut algs = word.algs.clone();
            algs[r - 1] = *g;
            out.add_term(ring, Word { m: word.m, algs, x: word.x }, ring.mul(&c, a));
        }
    }
    out
}

/// `(1^{⊗r} ⊗ μ₂ ⊗ 1)` merging algebra slots `r` and `r + 1`.
pub fn mu2_at<R: Ring>(module: &CoefficientModule<R>, w: &Words<R::Elem>, r: usize, trunc: &mut Truncation) -> Words<R::Elem> {
    let ring = module.ring();
    let mut out = Words::new();
    for (word, c) in w.iter() {
        if r == 0 || r >= word.algs.len() {
            continue;
        }
        for (g, a) in module.dga.mul_basis(word.algs[r - 1], word.algs[r], trunc).iter() {
            let mut algs = word.algs.clone();
            algs.splice(r - 1..=r, [*g]);
            out.add_term(ring, Word { m: word.m, algs, x: word.x }, ring.mul(c, a));
        }
    }
    out
}

/// `(−1)^N μ̃₁^{(r)} m̃^N = (−1)^{r+1} μ̃₂^{(r)} m̃^{N+1}` on every basis word `α ⊗ x`, `1 ≤ r ≤ N ≤ depth`.
pub fn check_elimination<R: Ring>(module: &CoefficientModule<R>, m: &TwistingCocycle<R>, depth: usize) -> Report {
    let ring = module.ring();
    let mut rep = Report::new("elimination identity");
    for a in 0..module.basis.len() {
        for x in 0..m.crit.len() {
            let mut powers = vec![words_of(&Chain::single(ring, (a, x), ring.one()))];
            for _ in 0..=depth {
                let next = m_tilde(module, m, powers.last().unwrap());
                powers.push(next);
            }
            for n in 1..=depth {
                for r in 1..=n {
                    let mut t = Truncation::default();
                    let lhs = mu1_at(module, &powers[n], r).scaled(ring, &sign(ring, n as i64));
                    let rhs = mu2_at(module, &powers[n + 1], r, &mut t).scaled(ring, &sign(ring, r as i64 + 1));
                    if !t.clean() {
                        rep.untested += 1;
                        continue;
                    }
                    rep.checked += 1;
                    if lhs != rhs {
                        rep.fail(
                            format!("elimination N = {n}, r = {r}"),
                            format!("{}⊗{}", module.basis.label(a), m.crit.label(x)),
                            "μ₁ and μ₂ sides differ",
                        );
                    }
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::CritSet;
    use crate::dga::Dga;
    use crate::ring::Integers;
    use num_bigint::BigInt;
    use std::sync::Arc;

    #[test]
    fn m_tilde_signs_by_prefix_degree() {
        let a = Arc::new(Dga::polynomial(Integers, 1, 6));
        let f = CoefficientModule::regular(a.clone());
        let crit = Arc::new(CritSet::new(2, vec![("m".into(), 0), ("M".into(), 2)]).unwrap());
        let u = a.basis.lookup("u").unwrap();
        let m = TwistingCocycle::new(a.clone(), crit, vec![((1, 0), Elem::single(&Integers, u, BigInt::from(1)))]).unwrap();
        let c: Chain<BigInt> = [((u, 1), BigInt::from(1))].into_iter().collect();
        let w = m_tilde(&f, &m, &words_of(&c));
        let (word, coeff) = w.iter().next().unwrap();
        assert_eq!(word.algs, vec![u]);
        assert_eq!(*coeff, BigInt::from(-1));
    }
}
