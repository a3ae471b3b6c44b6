//! Buchberger's algorithm with lexicographic order, normal pair selection,
//! and content-stripped reductions. Small systems only: the fibre equations
//! have at most six variables at desk scale.

use crate::mpoly::MPoly;
use crate::scalar::rat_i;

/// Full normal form of `f` against `basis`.
pub fn reduce(f: &MPoly, basis: &[MPoly]) -> MPoly {
    let nvars = f.nvars;
    let mut work = f.clone();
    let mut tail = MPoly::zero(nvars);
    'outer: while let Some((lm, lc)) = work.leading().cloned() {
        for g in basis {
            if let Some((gm, gc)) = g.leading() {
                if gm.divides(&lm) {
                    let factor = lc.clone() / gc.clone();
                    let shift = gm.div_into(&lm);
                    work = work.sub(&g.mul_term(&shift, &factor));
                    continue 'outer;
                }
            }
        }
        // Leading term is irreducible: move it to the tail.
        let head = MPoly {
            nvars,
            terms: vec![(lm, lc)],
        };
        tail = tail.add(&head);
        work.terms.remove(0);
    }
    tail
}

fn s_poly(f: &MPoly, g: &MPoly) -> MPoly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let lcm = fm.lcm(gm);
    let a = f.mul_term(&fm.div_into(&lcm), &(rat_i(1) / fc.clone()));
    let b = g.mul_term(&gm.div_into(&lcm), &(rat_i(1) / gc.clone()));
    a.sub(&b)
}

/// Reduced Groebner basis in the lex order, elements integer-primitive with
/// positive leading coefficient.
pub fn buchberger(gens: &[MPoly]) -> Vec<MPoly> {
    let mut basis: Vec<MPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.primitive())
        .collect();
    if basis.is_empty() {
        return basis;
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();

    while !pairs.is_empty() {
        // Normal selection: minimal lcm total degree first.
        let key = |&(i, j): &(usize, usize)| {
            let lm_i = &basis[i].leading().unwrap().0;
            let lm_j = &basis[j].leading().unwrap().0;
            lm_i.lcm(lm_j).total_degree()
        };
        let pick = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| key(p))
            .map(|(k, _)| k)
            .unwrap();
        let (i, j) = pairs.swap_remove(pick);
        done.insert((i, j));

        let lm_i = basis[i].leading().unwrap().0.clone();
        let lm_j = basis[j].leading().unwrap().0.clone();
        // First Buchberger criterion: coprime leading monomials reduce to 0.
        if lm_i.coprime(&lm_j) {
            continue;
        }
        // Chain criterion: some k with lm_k | lcm and both side pairs done.
        let lcm = lm_i.lcm(&lm_j);
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().unwrap().0.divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }

        let nf = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !nf.is_zero() {
            let k = basis.len();
            basis.push(nf.primitive());
            for l in 0..k {
                pairs.push((l, k));
            }
        }
    }

    interreduce(basis)
}

/// Reduce every element against the others; drop redundant members.
fn interreduce(mut basis: Vec<MPoly>) -> Vec<MPoly> {
    // Drop elements whose lead is divisible by another lead.
    basis.sort_by(|a, b| a.leading().unwrap().0.cmp(&b.leading().unwrap().0));
    let mut kept: Vec<MPoly> = Vec::new();
    'els: for g in &basis {
        let gm = &g.leading().unwrap().0;
        for h in &kept {
            if h.leading().unwrap().0.divides(gm) {
                continue 'els;
            }
        }
        kept.push(g.clone());
    }
    // Tail-reduce each against the rest.
    let snapshot = kept.clone();
    kept.iter_mut()
        .enumerate()
        .for_each(|(idx, g)| {
            let others: Vec<MPoly> = snapshot
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .map(|(_, h)| h.clone())
                .collect();
            *g = reduce(g, &others).primitive();
        });
    kept.retain(|g| !g.is_zero());
    kept.sort_by(|a, b| b.leading().unwrap().0.cmp(&a.leading().unwrap().0));
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_i;

    fn x(i: usize, n: usize) -> MPoly {
        MPoly::var(i, n)
    }

    #[test]
    fn linear_system() {
        // x + y - 3 = 0, x - y - 1 = 0 -> GB {x - 2, y - 1}.
        let f = x(0, 2).add(&x(1, 2)).sub(&MPoly::constant(2, rat_i(3)));
        let g = x(0, 2).sub(&x(1, 2)).sub(&MPoly::constant(2, rat_i(1)));
        let gb = buchberger(&[f, g]);
        assert_eq!(gb.len(), 2);
        // y - 1 should be the univariate element.
        let uni = gb
            .iter()
            .find_map(|p| p.to_univariate(1))
            .expect("eliminant in y");
        assert_eq!(uni.degree(), Some(1));
        assert_eq!(uni.eval(&rat_i(1)), rat_i(0));
    }

    #[test]
    fn circle_and_line() {
        // x^2 + y^2 - 1, x - y: eliminant 2y^2 - 1.
        let f = x(0, 2)
            .mul(&x(0, 2))
            .add(&x(1, 2).mul(&x(1, 2)))
            .sub(&MPoly::constant(2, rat_i(1)));
        let g = x(0, 2).sub(&x(1, 2));
        let gb = buchberger(&[f, g]);
        let uni = gb.iter().find_map(|p| p.to_univariate(1)).unwrap();
        assert_eq!(uni.degree(), Some(2));
        // Primitive form is exactly 2y^2 - 1.
        assert_eq!(uni.coeff(2), rat_i(2));
        assert_eq!(uni.coeff(1), rat_i(0));
        assert_eq!(uni.coeff(0), rat_i(-1));
    }

    #[test]
    fn katsura_like_shape_position() {
        // A tiny dense system with two solutions in shape position:
        // u + v - 1, u v - t  ->  v^2 - v + t = 0. With t = -2: v in {2, -1}.
        let t = MPoly::constant(2, rat_i(-2));
        let f = x(0, 2).add(&x(1, 2)).sub(&MPoly::constant(2, rat_i(1)));
        let g = x(0, 2).mul(&x(1, 2)).sub(&t);
        let gb = buchberger(&[f, g]);
        let uni = gb.iter().find_map(|p| p.to_univariate(1)).unwrap();
        assert_eq!(uni.degree(), Some(2));
        assert_eq!(uni.eval(&rat_i(2)), rat_i(0));
        assert_eq!(uni.eval(&rat_i(-1)), rat_i(0));
        // The other element rewrites u in terms of v.
        let shape = gb.iter().find(|p| {
            p.leading()
                .map(|(m, _)| m.0[0] == 1 && m.0[1] == 0)
                .unwrap_or(false)
        });
        assert!(shape.is_some());
    }
}
