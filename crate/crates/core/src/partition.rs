//! Equitable partitions, coarsest equitable refinement and the symmetrized
//! quotient graph.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::spectral::SpectralDecomposition;

/// Tolerance when comparing weighted cell sums.
pub const SUM_TOL: f64 = 1e-9;
/// Times at which the evolution intertwining is spot-checked.
pub const CHECK_TIMES: [f64; 5] = [0.3, 1.0, std::f64::consts::FRAC_PI_2, 2.221_441_469_079_183, 2.7];

/// Disjoint cover of `0..n` by nonempty cells, each sorted, cells ordered by
/// their minimum element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    n: usize,
    cells: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut cells: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        for c in &cells {
            if c.is_empty() {
                return Err(Error::NotAPartition("empty cell".into()));
            }
            for &v in c {
                if v >= n {
                    return Err(Error::NotAPartition(format!("vertex {v} out of range")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotAPartition(format!("vertex {v} in two cells")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::NotAPartition(format!("vertex {v} not covered")));
        }
        cells.sort_by_key(|c| c[0]);
        Ok(Self { n, cells })
    }

    pub fn discrete(n: usize) -> Self {
        Self {
            n,
            cells: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn single(n: usize) -> Self {
        Self {
            n,
            cells: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cell index of every vertex.
    pub fn cell_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (j, c) in self.cells.iter().enumerate() {
            for &v in c {
                out[v] = j;
            }
        }
        out
    }

    /// Normalized characteristic matrix: column `j` is the unit indicator of
    /// cell `j`.
    pub fn characteristic_matrix(&self) -> DMatrix<f64> {
        let mut c = DMatrix::zeros(self.n, self.cells.len());
        for (j, cell) in self.cells.iter().enumerate() {
            let x = 1.0 / (cell.len() as f64).sqrt();
            for &v in cell {
                c[(v, j)] = x;
            }
        }
        c
    }

    /// True when every cell of `self` lies inside a cell of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let owner = other.cell_of();
        self.cells
            .iter()
            .all(|c| c.iter().all(|&v| owner[v] == owner[c[0]]))
    }

    /// Appends singleton cells for `extra` new vertices.
    fn extended(&self, extra: usize) -> Partition {
        let mut cells = self.cells.clone();
        cells.extend((self.n..self.n + extra).map(|v| vec![v]));
        Partition {
            n: self.n + extra,
            cells,
        }
    }
}

/// A verified equitable partition with its cell constants.
#[derive(Debug, Clone, Serialize)]
pub struct EquitableData {
    pub partition: Partition,
    /// `c[j][k]`: total weight from any vertex of cell `j` into cell `k`.
    #[serde(skip)]
    pub constants: DMatrix<f64>,
    #[serde(skip)]
    pub charmatrix: DMatrix<f64>,
}

/// Row sums of every vertex into every cell.
fn cell_sums(g: &WeightedGraph, owner: &[usize], cells: usize) -> Vec<Vec<f64>> {
    (0..g.n())
        .map(|a| {
            let mut s = vec![0.0; cells];
            for &(b, w) in g.neighbors(a) {
                s[owner[b]] += w;
            }
            s
        })
        .collect()
}

fn check_finite(g: &WeightedGraph, p: &Partition) -> Result<DMatrix<f64>> {
    let owner = p.cell_of();
    let sums = cell_sums(g, &owner, p.len());
    let mut c = DMatrix::zeros(p.len(), p.len());
    for (j, cell) in p.cells().iter().enumerate() {
        let first = cell[0];
        for k in 0..p.len() {
            c[(j, k)] = sums[first][k];
            for &a in &cell[1..] {
                if (sums[a][k] - sums[first][k]).abs() > SUM_TOL {
                    return Err(Error::NotEquitable {
                        cell: j,
                        target: k,
                        a: first,
                        a_prime: a,
                        sum_a: sums[first][k],
                        sum_a_prime: sums[a][k],
                    });
                }
            }
        }
    }
    Ok(c)
}

fn tails_ok(g: &WeightedGraph, p: &Partition) -> Result<()> {
    if !g.has_tails() {
        return Ok(());
    }
    let owner = p.cell_of();
    for t in g.tails() {
        if p.cells()[owner[t.attach]].len() != 1 {
            return Err(Error::TailAttachNotSingleton(t.attach));
        }
    }
    // tail interiors are regular paths, so depth 2 with singleton tail cells
    // exercises every distinct row pattern
    let truncated = g.truncate(2);
    check_finite(&truncated, &p.extended(truncated.n() - g.n())).map(|_| ())
}

/// Verifies that `p` is equitable. On graphs with tails, cells cover the core
/// and tail edges are left out of the cell sums; every attach vertex must be a
/// singleton cell.
pub fn check_equitable(g: &WeightedGraph, p: &Partition) -> Result<EquitableData> {
    if p.n() != g.n() {
        return Err(Error::NotAPartition(format!(
            "partition covers {} vertices, graph core has {}",
            p.n(),
            g.n()
        )));
    }
    tails_ok(g, p)?;
    let constants = check_finite(g, p)?;
    Ok(EquitableData {
        partition: p.clone(),
        constants,
        charmatrix: p.characteristic_matrix(),
    })
}

/// Coarsest equitable partition refining `seed`, by repeated splitting of
/// cells on their vectors of cell sums. Tail attach vertices are split off
/// as singletons first.
pub fn coarsest_equitable(g: &WeightedGraph, seed: &Partition) -> Result<EquitableData> {
    if seed.n() != g.n() {
        return Err(Error::NotAPartition("seed size differs from graph".into()));
    }
    let mut cells: Vec<Vec<usize>> = seed.cells().to_vec();
    if g.has_tails() {
        let attach: Vec<usize> = g.tails().iter().map(|t| t.attach).collect();
        let mut split = Vec::new();
        for c in &mut cells {
            c.retain(|v| !attach.contains(v));
        }
        cells.retain(|c| !c.is_empty());
        for &v in &attach {
            if !split.contains(&vec![v]) {
                split.push(vec![v]);
            }
        }
        cells.extend(split);
    }
    loop {
        let mut owner = vec![0; g.n()];
        for (j, c) in cells.iter().enumerate() {
            for &v in c {
                owner[v] = j;
            }
        }
        let sums = cell_sums(g, &owner, cells.len());
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut members = cell.clone();
            members.sort_by(|&a, &b| {
                sums[a]
                    .iter()
                    .zip(&sums[b])
                    .map(|(x, y)| x.total_cmp(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(a.cmp(&b))
            });
            let mut group = vec![members[0]];
            for w in members.windows(2) {
                let differs = sums[w[0]]
                    .iter()
                    .zip(&sums[w[1]])
                    .any(|(x, y)| (x - y).abs() > SUM_TOL);
                if differs {
                    next.push(std::mem::take(&mut group));
                }
                group.push(w[1]);
            }
            next.push(group);
        }
        let stable = next.len() == cells.len();
        cells = next;
        if stable {
            break;
        }
    }
    let p = Partition::new(g.n(), cells)?;
    check_equitable(g, &p)
}

/// Symmetrized quotient graph together with its intertwining residuals.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientGraph {
    #[serde(skip)]
    pub adjacency: DMatrix<f64>,
    /// `‖A C − C B‖_max`.
    pub intertwining_residual: f64,
    /// max over [`CHECK_TIMES`] of `‖U_G(t) C − C U_B(t)‖_max`.
    pub evolution_residual: f64,
}

/// Quotient adjacency `sign(c_jk) √(c_jk c_kj)` with numerical checks of
/// `A C = C B` and `U_G(t) C = C U_B(t)` on the core.
pub fn quotient(g: &WeightedGraph, ed: &EquitableData) -> Result<QuotientGraph> {
    let d = ed.partition.len();
    let c = &ed.constants;
    let mut b = DMatrix::zeros(d, d);
    for j in 0..d {
        for k in 0..d {
            let prod = c[(j, k)] * c[(k, j)];
            if prod < -SUM_TOL {
                return Err(Error::SignInconsistency(j, k));
            }
            let mag = prod.max(0.0).sqrt();
            b[(j, k)] = if c[(j, k)] < 0.0 { -mag } else { mag };
        }
    }
    // symmetrize away roundoff
    let b = (&b + b.transpose()) * 0.5;
    let a = g.adjacency_matrix();
    let cm = &ed.charmatrix;
    let intertwining_residual = (&a * cm - cm * &b).amax();
    let ua = SpectralDecomposition::new(&a);
    let ub = SpectralDecomposition::new(&b);
    let cc = cm.map(|x| num_complex::Complex64::new(x, 0.0));
    let evolution_residual = CHECK_TIMES
        .iter()
        .map(|&t| (ua.transition_matrix(t) * &cc - &cc * ub.transition_matrix(t)).map(|z| z.norm()).max())
        .fold(0.0, f64::max);
    Ok(QuotientGraph {
        adjacency: b,
        intertwining_residual,
        evolution_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> WeightedGraph {
        WeightedGraph::unweighted(n, (0..n - 1).map(|j| (j, j + 1))).unwrap()
    }

    fn cycle(n: usize) -> WeightedGraph {
        WeightedGraph::unweighted(n, (0..n).map(|j| (j, (j + 1) % n))).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(matches!(Partition::new(3, vec![vec![0, 1]]), Err(Error::NotAPartition(_))));
        assert!(matches!(
            Partition::new(2, vec![vec![0, 1], vec![1]]),
            Err(Error::NotAPartition(_))
        ));
        assert!(matches!(Partition::new(2, vec![vec![0, 1], vec![]]), Err(Error::NotAPartition(_))));
        let p = Partition::new(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(p.cells(), &[vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn characteristic_matrix_is_orthonormal() {
        let p = Partition::new(5, vec![vec![0, 4], vec![1, 2, 3]]).unwrap();
        let c = p.characteristic_matrix();
        assert!((c.transpose() * &c - DMatrix::identity(2, 2)).amax() < 1e-12);
        let proj = &c * c.transpose();
        assert!((proj[(1, 3)] - 1.0 / 3.0).abs() < 1e-12);
        assert!((proj[(0, 4)] - 0.5).abs() < 1e-12);
        assert_eq!(proj[(0, 1)], 0.0);
    }

    #[test]
    fn p3_ends_and_middle() {
        let g = path(3);
        let p = Partition::new(3, vec![vec![0, 2], vec![1]]).unwrap();
        let ed = check_equitable(&g, &p).unwrap();
        assert_eq!(ed.constants[(0, 1)], 1.0);
        assert_eq!(ed.constants[(1, 0)], 2.0);
        let q = quotient(&g, &ed).unwrap();
        assert!((q.adjacency[(0, 1)] - 2f64.sqrt()).abs() < 1e-15);
        assert!(q.intertwining_residual < 1e-12);
        assert!(q.evolution_residual < 1e-9);
    }

    #[test]
    fn discrete_partition_gives_the_graph() {
        let g = WeightedGraph::new(4, [(0, 1, 2.0), (1, 2, -1.0), (2, 3, 0.5)]).unwrap();
        let ed = check_equitable(&g, &Partition::discrete(4)).unwrap();
        let q = quotient(&g, &ed).unwrap();
        assert!((q.adjacency.clone() - g.adjacency_matrix()).amax() < 1e-15);
    }

    #[test]
    fn failure_witness() {
        let g = path(4);
        let p = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        match check_equitable(&g, &p) {
            Err(Error::NotEquitable { cell, a, a_prime, sum_a, sum_a_prime, .. }) => {
                assert_eq!(cell, 0);
                assert_eq!((a, a_prime), (0, 1));
                assert_ne!(sum_a, sum_a_prime);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn refinement_fixed_points() {
        let c6 = cycle(6);
        let ed = coarsest_equitable(&c6, &Partition::single(6)).unwrap();
        assert_eq!(ed.partition.len(), 1);
        let g = path(5);
        let ed = coarsest_equitable(&g, &Partition::discrete(5)).unwrap();
        assert_eq!(ed.partition, Partition::discrete(5));
        let ed = coarsest_equitable(&g, &Partition::single(5)).unwrap();
        assert_eq!(ed.partition.cells(), &[vec![0, 4], vec![1, 3], vec![2]]);
    }

    #[test]
    fn signed_weights_split() {
        // vertex 1 sees +1 and -1, vertex 0 sees only +1
        let g = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, -1.0)]).unwrap();
        let ed = coarsest_equitable(&g, &Partition::single(3)).unwrap();
        assert_eq!(ed.partition, Partition::discrete(3));
    }

    #[test]
    fn tail_attach_must_be_singleton() {
        use crate::graph::TailSpec;
        let g = path(3).with_tails(vec![TailSpec::unit(1)]).unwrap();
        let bad = Partition::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(check_equitable(&g, &bad).unwrap_err(), Error::TailAttachNotSingleton(1));
        let ok = Partition::new(3, vec![vec![0, 2], vec![1]]).unwrap();
        let ed = check_equitable(&g, &ok).unwrap();
        assert_eq!(ed.constants[(1, 0)], 2.0);
    }
}
