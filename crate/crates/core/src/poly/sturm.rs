//! Certified real-root counting over the rationals: Sturm chains and Yun
//! square-free decomposition.

use super::UniPoly;
use crate::scalar::{rat_sign, Rat};

/// Rescale by a positive rational only; `primitive()` would also normalize
/// the leading sign, which must be preserved inside a Sturm chain.
fn positive_primitive(p: &UniPoly<Rat>) -> UniPoly<Rat> {
    let q = p.primitive();
    let flipped = match (p.leading(), q.leading()) {
        (Some(a), Some(b)) => rat_sign(a) != rat_sign(b),
        _ => false,
    };
    if flipped {
        q.neg()
    } else {
        q
    }
}

/// Sturm chain of `p` (which need not be square-free; the chain ends at the
/// gcd of `p` and `p'`).
fn sturm_chain(p: &UniPoly<Rat>) -> Vec<UniPoly<Rat>> {
    let mut chain = vec![positive_primitive(p)];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(positive_primitive(&d));
    loop {
        let k = chain.len();
        let (_, r) = chain[k - 2].divrem(&chain[k - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(positive_primitive(&r.neg()));
    }
    chain
}

/// Sign of `q` at +infinity (sign of the leading coefficient).
fn sign_at_pos_inf(q: &UniPoly<Rat>) -> i32 {
    q.leading().map_or(0, rat_sign)
}

/// Sign of `q` at -infinity.
fn sign_at_neg_inf(q: &UniPoly<Rat>) -> i32 {
    match q.degree() {
        None => 0,
        Some(d) => {
            let s = q.leading().map_or(0, rat_sign);
            if d % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of *distinct* real roots of `p`, counted exactly.
pub fn count_distinct_real_roots(p: &UniPoly<Rat>) -> usize {
    match p.degree() {
        None | Some(0) => return 0,
        _ => {}
    }
    // Sturm's theorem needs a square-free polynomial.
    let sf = square_free_part(p);
    let chain = sturm_chain(&sf);
    let at_neg = variations(chain.iter().map(sign_at_neg_inf));
    let at_pos = variations(chain.iter().map(sign_at_pos_inf));
    at_neg - at_pos
}

/// The square-free part `p / gcd(p, p')`, monic.
pub fn square_free_part(p: &UniPoly<Rat>) -> UniPoly<Rat> {
    let g = p.gcd(&p.derivative());
    if g.degree() == Some(0) || g.is_zero() {
        return p.monic();
    }
    let (q, r) = p.divrem(&g);
    debug_assert!(r.is_zero());
    q.monic()
}

/// Yun's square-free decomposition: returns pairs `(factor, multiplicity)`
/// with `p = lc * prod factor^multiplicity`, each factor square-free, monic,
/// and pairwise coprime. Constant factors are dropped.
pub fn square_free_decomposition(p: &UniPoly<Rat>) -> Vec<(UniPoly<Rat>, usize)> {
    let mut out = Vec::new();
    let Some(d) = p.degree() else {
        return out;
    };
    if d == 0 {
        return out;
    }
    let p = p.monic();
    let dp = p.derivative();
    let mut a = p.gcd(&dp);
    let (mut b, r) = p.divrem(&a);
    debug_assert!(r.is_zero());
    let (mut c, r) = dp.divrem(&a);
    debug_assert!(r.is_zero());
    let mut mult = 1;
    loop {
        let db = b.derivative();
        let diff = c.sub(&db);
        if diff.is_zero() {
            if b.degree().is_some_and(|d| d > 0) {
                out.push((b.monic(), mult));
            }
            break;
        }
        a = b.gcd(&diff);
        if a.degree().is_some_and(|d| d > 0) {
            out.push((a.monic(), mult));
        }
        let (nb, r) = b.divrem(&a);
        debug_assert!(r.is_zero());
        b = nb;
        let (nc, r) = diff.divrem(&a);
        debug_assert!(r.is_zero());
        c = nc;
        mult += 1;
        if b.degree() == Some(0) {
            break;
        }
    }
    out
}

/// Real roots of `p` counted with multiplicity, certified.
pub fn count_real_roots_with_multiplicity(p: &UniPoly<Rat>) -> usize {
    square_free_decomposition(p)
        .iter()
        .map(|(f, m)| m * count_distinct_real_roots(f))
        .sum()
}

/// True when `p` has no repeated complex root.
pub fn is_square_free(p: &UniPoly<Rat>) -> bool {
    let g = p.gcd(&p.derivative());
    g.is_zero() || g.degree() == Some(0)
}
