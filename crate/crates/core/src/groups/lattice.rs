//! Integer linear algebra on prime-exponent vectors.

use std::collections::BTreeSet;

use super::RatioGroupElement;

struct ColumnEchelon {
    /// `h = a * u`, column-echelon with reduced pivot rows.
    h: Vec<Vec<i128>>,
    u: Vec<Vec<i128>>,
    pivots: Vec<(usize, usize)>,
}

fn primes_of<'a>(elems: impl IntoIterator<Item = &'a RatioGroupElement>) -> Vec<u64> {
    let set: BTreeSet<u64> = elems.into_iter().flat_map(|g| g.exponents().keys().copied()).collect();
    set.into_iter().collect()
}

fn col_op(m: &mut [Vec<i128>], dst: usize, src: usize, factor: i128) {
    for row in m.iter_mut() {
        row[dst] -= factor * row[src];
    }
}

fn col_swap(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn col_negate(m: &mut [Vec<i128>], c: usize) {
    for row in m.iter_mut() {
        row[c] = -row[c];
    }
}

fn echelon(mut h: Vec<Vec<i128>>, ncols: usize) -> ColumnEchelon {
    let mut u: Vec<Vec<i128>> =
        (0..ncols).map(|i| (0..ncols).map(|j| i128::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    let mut pc = 0;
    for row in 0..h.len() {
        if pc == ncols {
            break;
        }
        loop {
            let min = (pc..ncols).filter(|&j| h[row][j] != 0).min_by_key(|&j| h[row][j].abs());
            let Some(jmin) = min else { break };
            col_swap(&mut h, pc, jmin);
            col_swap(&mut u, pc, jmin);
            let mut reduced = true;
            for j in pc + 1..ncols {
                if h[row][j] != 0 {
                    let q = h[row][j].div_euclid(h[row][pc]);
                    col_op(&mut h, j, pc, q);
                    col_op(&mut u, j, pc, q);
                    reduced &= h[row][j] == 0;
                }
            }
            if reduced {
                break;
            }
        }
        if h[row][pc] != 0 {
            if h[row][pc] < 0 {
                col_negate(&mut h, pc);
                col_negate(&mut u, pc);
            }
            // reduce earlier pivot columns modulo this pivot
            for j in 0..pc {
                let q = h[row][j].div_euclid(h[row][pc]);
                if q != 0 {
                    col_op(&mut h, j, pc, q);
                    col_op(&mut u, j, pc, q);
                }
            }
            pivots.push((row, pc));
            pc += 1;
        }
    }
    ColumnEchelon { h, u, pivots }
}

fn exponent_matrix(primes: &[u64], gens: &[RatioGroupElement]) -> Vec<Vec<i128>> {
    primes
        .iter()
        .map(|&p| gens.iter().map(|g| g.exponent(p) as i128).collect())
        .collect()
}

/// A basis of the subgroup generated by `elems`, each basis element
/// oriented to have value greater than one.
pub fn lattice_basis(elems: &[RatioGroupElement]) -> Vec<RatioGroupElement> {
    let primes = primes_of(elems);
    if primes.is_empty() {
        return Vec::new();
    }
    let ech = echelon(exponent_matrix(&primes, elems), elems.len());
    ech.pivots
        .iter()
        .map(|&(_, c)| {
            let g = RatioGroupElement::from_exponents(
                primes.iter().enumerate().map(|(r, &p)| (p, ech.h[r][c] as i64)),
            )
            .expect("primes come from factored inputs");
            if g.exceeds_one() {
                g
            } else {
                g.inv()
            }
        })
        .collect()
}

/// Integer exponents `x` with `prod gens[i]^x[i] = target`, or `None` when
/// `target` lies outside the generated subgroup.
pub fn ratio_membership(target: &RatioGroupElement, gens: &[RatioGroupElement]) -> Option<Vec<i64>> {
    let primes = primes_of(gens.iter().chain(std::iter::once(target)));
    let n = gens.len();
    if target.is_identity() {
        return Some(vec![0; n]);
    }
    if n == 0 {
        return None;
    }
    let b: Vec<i128> = primes.iter().map(|&p| target.exponent(p) as i128).collect();
    let ech = echelon(exponent_matrix(&primes, gens), n);
    let mut y = vec![0i128; n];
    for &(row, col) in &ech.pivots {
        let partial: i128 = (0..col).map(|c| ech.h[row][c] * y[c]).sum();
        let rest = b[row] - partial;
        if rest % ech.h[row][col] != 0 {
            return None;
        }
        y[col] = rest / ech.h[row][col];
    }
    let consistent = (0..primes.len()).all(|r| (0..n).map(|c| ech.h[r][c] * y[c]).sum::<i128>() == b[r]);
    if !consistent {
        return None;
    }
    Some((0..n).map(|i| (0..n).map(|j| ech.u[i][j] * y[j]).sum::<i128>() as i64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> RatioGroupElement {
        RatioGroupElement::from_fraction(n, d).unwrap()
    }

    fn product(gens: &[RatioGroupElement], x: &[i64]) -> RatioGroupElement {
        gens.iter().zip(x).fold(RatioGroupElement::identity(), |acc, (g, &e)| acc.mul(&g.pow(e)))
    }

    #[test]
    fn membership_examples() {
        let gens = [r(1, 2), r(1, 3)];
        assert_eq!(ratio_membership(&r(2, 9), &gens), Some(vec![-1, 2]));
        assert_eq!(ratio_membership(&r(5, 1), &[r(2, 1), r(3, 1)]), None);
        assert_eq!(ratio_membership(&r(1, 1), &gens), Some(vec![0, 0]));
    }

    #[test]
    fn membership_with_dependent_generators() {
        let gens = [r(4, 1), r(6, 1), r(9, 1)];
        let x = ratio_membership(&r(2, 3), &gens).unwrap();
        assert_eq!(product(&gens, &x), r(2, 3));
        assert_eq!(ratio_membership(&r(2, 1), &gens), None);
        let x = ratio_membership(&r(8, 3), &[r(4, 1), r(6, 1)]).unwrap();
        assert_eq!(product(&[r(4, 1), r(6, 1)], &x), r(8, 3));
        assert_eq!(ratio_membership(&r(2, 1), &[r(4, 1)]), None);
    }

    #[test]
    fn basis_of_ratio_sets() {
        assert_eq!(lattice_basis(&[r(1, 2), r(2, 1), r(1, 1)]), vec![r(2, 1)]);
        let b = lattice_basis(&[r(2, 1), r(3, 1), r(6, 1), r(3, 2), r(1, 6)]);
        assert_eq!(b, vec![r(2, 1), r(3, 1)]);
        assert_eq!(lattice_basis(&[r(4, 1), r(1, 16)]), vec![r(4, 1)]);
        assert!(lattice_basis(&[r(1, 1)]).is_empty());
    }
}
