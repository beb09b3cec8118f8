//! Eccentricities, eccentricity matrices and quotients over equitable partitions.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{domain, Error, Result};
use crate::exact::{IntMatrix, RatMatrix};
use crate::graph::{distances, Graph};
use crate::number_theory::gcd;
use crate::spectra::eigenvalues_symmetric;

/// `e(u)` within the component of `u`; isolated vertices get 0.
pub fn eccentricities(g: &Graph) -> Vec<u32> {
    let d = distances(g);
    (0..g.order())
        .map(|u| (0..g.order()).filter_map(|v| d.get(u, v)).max().unwrap_or(0))
        .collect()
}

/// Eccentricity matrix, taken component by component for disconnected
/// graphs: entries across components are 0 and isolated vertices give zero
/// rows.
pub fn eccentricity_matrix(g: &Graph) -> IntMatrix {
    let d = distances(g);
    let ecc = eccentricities(g);
    IntMatrix::from_fn(g.order(), |u, v| match d.get(u, v) {
        Some(duv) if u != v && duv == ecc[u].min(ecc[v]) => i64::from(duv),
        _ => 0,
    })
}

/// The support graph (`i ~ j` iff `m[i][j] != 0`) is connected.
///
/// A 1x1 matrix counts as irreducible; a zero matrix of order >= 2 does not.
pub fn is_irreducible(m: &IntMatrix) -> bool {
    let n = m.order();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for (v, s) in seen.iter_mut().enumerate() {
            if !*s && (m.get(u, v) != 0 || m.get(v, u) != 0) {
                *s = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Disjoint nonempty blocks of vertex indices covering `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(order: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![false; order];
        for b in &blocks {
            if b.is_empty() {
                return Err(domain("partition blocks must be nonempty"));
            }
            for &i in b {
                if i >= order {
                    return Err(domain(format!("vertex {i} out of range for order {order}")));
                }
                if owner[i] {
                    return Err(domain(format!("vertex {i} appears in two blocks")));
                }
                owner[i] = true;
            }
        }
        if let Some(missing) = owner.iter().position(|&o| !o) {
            return Err(domain(format!("vertex {missing} is not covered")));
        }
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

/// Vertices of a graph over Z_n grouped by `gcd(label, n)`, blocks in
/// ascending divisor order.
pub fn divisor_partition(g: &Graph, n: u64) -> Result<Partition> {
    let mut keyed: Vec<(u64, usize)> = g.labels().iter().enumerate().map(|(i, &l)| (gcd(l, n), i)).collect();
    keyed.sort_unstable();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for (d, i) in keyed {
        if last != Some(d) {
            blocks.push(Vec::new());
            last = Some(d);
        }
        blocks.last_mut().expect("just pushed").push(i);
    }
    Partition::new(g.order(), blocks)
}

/// Block row-sum matrix of an equitable partition.
pub fn quotient_matrix(m: &IntMatrix, partition: &Partition) -> Result<RatMatrix> {
    let blocks = partition.blocks();
    let k = blocks.len();
    let mut q = RatMatrix::zeros(k);
    for (bi, rows) in blocks.iter().enumerate() {
        for (bj, cols) in blocks.iter().enumerate() {
            let sum_of = |r: usize| cols.iter().map(|&c| m.get(r, c)).sum::<i64>();
            let first = sum_of(rows[0]);
            for &r in &rows[1..] {
                let s = sum_of(r);
                if s != first {
                    return Err(Error::Equitability {
                        block_i: bi,
                        block_j: bj,
                        row_a: rows[0],
                        sum_a: first,
                        row_b: r,
                        sum_b: s,
                    });
                }
            }
            q.set(bi, bj, BigRational::from_integer(BigInt::from(first)));
        }
    }
    Ok(q)
}

/// Eigenvalues of a quotient matrix of a symmetric matrix, ascending.
///
/// `Q = D^{-1} B` with `B` symmetric and `D = diag(|block|)`, so `Q` is
/// similar to the symmetric `D^{1/2} Q D^{-1/2}`.
pub fn quotient_eigenvalues(q: &RatMatrix, sizes: &[usize]) -> Result<Vec<f64>> {
    use num_traits::ToPrimitive;
    let k = q.order();
    if sizes.len() != k {
        return Err(domain("block sizes do not match quotient order"));
    }
    let mut s = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..k {
            let v = q.get(i, j).to_f64().unwrap_or(f64::NAN);
            s[i * k + j] = v * (sizes[i] as f64 / sizes[j] as f64).sqrt();
        }
    }
    // symmetric in exact arithmetic; average away the rounding
    for i in 0..k {
        for j in i + 1..k {
            let avg = 0.5 * (s[i * k + j] + s[j * k + i]);
            s[i * k + j] = avg;
            s[j * k + i] = avg;
        }
    }
    eigenvalues_symmetric(&s, k, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_extended_zdg, build_zdg, complement};

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn eccentricities_examples() {
        assert_eq!(eccentricities(&build_zdg(8).unwrap()), vec![2, 1, 2]);
        assert_eq!(eccentricities(&Graph::complete_on(5)), vec![1; 5]);
        assert_eq!(eccentricities(&build_zdg(35).unwrap()), vec![2; 10]);
    }

    #[test]
    fn matrix_of_z8() {
        let m = eccentricity_matrix(&build_zdg(8).unwrap());
        assert_eq!(m.rows(), vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]);
        let e = eccentricity_matrix(&build_extended_zdg(8).unwrap());
        assert_eq!(e.rows(), vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn complete_graph_gives_j_minus_i() {
        let m = eccentricity_matrix(&Graph::complete_on(4));
        assert_eq!(m, IntMatrix::from_fn(4, |i, j| i64::from(i != j)));
    }

    #[test]
    fn disconnected_complement_is_block_diagonal() {
        // complement of Γ(Z_27): K_6 on A(3), while 9 and 18 are isolated
        let g = complement(&build_zdg(27).unwrap());
        let m = eccentricity_matrix(&g);
        let labels = g.labels();
        for i in 0..g.order() {
            for j in 0..g.order() {
                let both_in_a3 = !labels[i].is_multiple_of(9) && !labels[j].is_multiple_of(9);
                let expected = i64::from(both_in_a3 && i != j);
                assert_eq!(m.get(i, j), expected, "({}, {})", labels[i], labels[j]);
            }
        }
    }

    #[test]
    fn entries_are_zero_or_distance() {
        for n in [12u64, 18, 30, 36, 45, 60] {
            let g = build_zdg(n).unwrap();
            let d = distances(&g);
            let m = eccentricity_matrix(&g);
            assert_eq!(m.trace(), 0);
            assert!(m.is_symmetric());
            for i in 0..g.order() {
                for j in 0..g.order() {
                    let v = m.get(i, j);
                    assert!(v == 0 || Some(v as u32) == d.get(i, j));
                }
            }
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&eccentricity_matrix(&build_zdg(14).unwrap())));
        assert!(!is_irreducible(&eccentricity_matrix(&build_zdg(35).unwrap())));
        assert!(!is_irreducible(&IntMatrix::zeros(3)));
        assert!(is_irreducible(&IntMatrix::zeros(1)));
    }

    #[test]
    fn quotient_examples() {
        let g = build_zdg(35).unwrap();
        let m = eccentricity_matrix(&g);
        let part = divisor_partition(&g, 35).unwrap();
        assert_eq!(part.sizes(), vec![6, 4]);
        let q = quotient_matrix(&m, &part).unwrap();
        assert_eq!(q, RatMatrix::from_i64_rows(&[vec![10, 0], vec![0, 6]]).unwrap());

        let g = build_zdg(27).unwrap();
        let part = divisor_partition(&g, 27).unwrap();
        let q = quotient_matrix(&eccentricity_matrix(&g), &part).unwrap();
        assert_eq!(q, RatMatrix::from_i64_rows(&[vec![10, 2], vec![6, 1]]).unwrap());
        let ev = quotient_eigenvalues(&q, &part.sizes()).unwrap();
        let disc = 129f64.sqrt();
        assert!((ev[0] - (11.0 - disc) / 2.0).abs() < 1e-10);
        assert!((ev[1] - (11.0 + disc) / 2.0).abs() < 1e-10);

        let k = Graph::complete_on(5);
        let single = Partition::new(5, vec![(0..5).collect()]).unwrap();
        let q = quotient_matrix(&eccentricity_matrix(&k), &single).unwrap();
        assert_eq!(q.get(0, 0), &int(4));
    }

    #[test]
    fn non_equitable_partition_is_reported() {
        let m = eccentricity_matrix(&build_zdg(8).unwrap());
        let part = Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        match quotient_matrix(&m, &part) {
            Err(Error::Equitability {
                block_i: 0,
                row_a: 0,
                row_b: 1,
                ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 1], vec![]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 2], vec![1]]).is_err());
    }
}
