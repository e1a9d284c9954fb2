use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Cayley graph over `ℤ_{m_1} × … × ℤ_{m_r}`. Elements are digit vectors;
/// vertex indices are mixed radix with the first factor most significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleySpec {
    pub moduli: Vec<usize>,
    pub connection: Vec<Vec<usize>>,
}

impl CayleySpec {
    pub fn new(moduli: Vec<usize>, connection: Vec<Vec<usize>>) -> Result<Self> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::BadParam("group needs at least one nonzero modulus".into()));
        }
        let mut conn = Vec::with_capacity(connection.len());
        for s in connection {
            if s.len() != moduli.len() {
                return Err(Error::SizeMismatch(s.len(), moduli.len()));
            }
            let s: Vec<usize> = s.iter().zip(&moduli).map(|(x, m)| x % m).collect();
            if !conn.contains(&s) {
                conn.push(s);
            }
        }
        let spec = CayleySpec { moduli, connection: conn };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.connection {
            if s.iter().all(|&x| x == 0) {
                return Err(Error::IdentityInConnection);
            }
            let neg = self.negate(s);
            if !self.connection.iter().any(|t| reduce(t, &self.moduli) == neg) {
                return Err(Error::AsymmetricConnection);
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product()
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.moduli).fold(0, |acc, (d, m)| acc * m + d % m)
    }

    pub fn element(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.moduli.len()];
        for (slot, m) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = idx % m;
            idx /= m;
        }
        out
    }

    fn negate(&self, s: &[usize]) -> Vec<usize> {
        s.iter().zip(&self.moduli).map(|(x, m)| (m - x % m) % m).collect()
    }

    fn add(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().zip(b).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect()
    }
}

fn reduce(s: &[usize], moduli: &[usize]) -> Vec<usize> {
    s.iter().zip(moduli).map(|(x, m)| x % m).collect()
}

/// `a ~ b` iff `a - b ∈ S`.
pub fn cayley(spec: &CayleySpec) -> Result<WeightedGraph> {
    spec.validate()?;
    let n = spec.order();
    let mut edges = Vec::new();
    for a in 0..n {
        let ea = spec.element(a);
        for s in &spec.connection {
            let b = spec.index(&spec.add(&ea, s));
            if a < b {
                edges.push((a, b));
            }
        }
    }
    let labels = (0..n)
        .map(|v| spec.element(v).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
        .map(|s| format!("({s})"))
        .collect();
    WeightedGraph::unweighted(n, edges)?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle};

    fn unlabelled(g: WeightedGraph) -> WeightedGraph {
        WeightedGraph::new(g.n(), g.edges()).unwrap()
    }

    #[test]
    fn cycle_from_z6() {
        let spec = CayleySpec::new(vec![6], vec![vec![1], vec![5]]).unwrap();
        assert_eq!(unlabelled(cayley(&spec).unwrap()), cycle(6));
    }

    #[test]
    fn k4_from_z2_squared() {
        let spec = CayleySpec::new(vec![2, 2], vec![vec![0, 1], vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(unlabelled(cayley(&spec).unwrap()), complete(4));
    }

    #[test]
    fn mixed_radix() {
        let spec = CayleySpec::new(vec![6, 4], vec![vec![1, 0], vec![5, 0]]).unwrap();
        assert_eq!(spec.index(&[2, 3]), 11);
        assert_eq!(spec.element(11), vec![2, 3]);
        let g = cayley(&spec).unwrap();
        assert_eq!(g.label(11), "(2,3)");
        assert_eq!(g.edge_count(), 24);
    }

    #[test]
    fn bad_connections() {
        assert!(matches!(CayleySpec::new(vec![6], vec![vec![1]]), Err(Error::AsymmetricConnection)));
        assert!(matches!(CayleySpec::new(vec![6], vec![vec![0]]), Err(Error::IdentityInConnection)));
        // 3 = -3 in Z_6
        assert!(CayleySpec::new(vec![6], vec![vec![3]]).is_ok());
    }

    #[test]
    fn example_two_d1_is_connected_16() {
        let spec = CayleySpec::new(vec![8, 2], vec![vec![1, 0], vec![7, 0], vec![0, 1]]).unwrap();
        let g = cayley(&spec).unwrap();
        assert_eq!(g.n(), 16);
        assert_eq!(g.edge_count(), 24);
    }
}
