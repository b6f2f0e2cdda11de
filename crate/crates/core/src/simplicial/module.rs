//! Level-truncated simplicial modules over `Z/p^e`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Zpe, ZpeMatrix};

use super::SimplicialError;

/// Free modules `M_0, ..., M_L` with faces `d_i: M_n -> M_{n-1}` and
/// degeneracies `s_i: M_n -> M_{n+1}` as matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModuleRepr", into = "ModuleRepr")]
pub struct SimplicialModule {
    ring: Zpe,
    ranks: Vec<usize>,
    /// `faces[n][i]` for `1 <= n <= L`; `faces[0]` is empty.
    faces: Vec<Vec<ZpeMatrix>>,
    /// `degens[n][i]` for `n < L`.
    degens: Vec<Vec<ZpeMatrix>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ModuleRepr {
    ring: Zpe,
    ranks: Vec<usize>,
    faces: Vec<Vec<ZpeMatrix>>,
    degeneracies: Vec<Vec<ZpeMatrix>>,
}

impl TryFrom<ModuleRepr> for SimplicialModule {
    type Error = SimplicialError;
    fn try_from(r: ModuleRepr) -> Result<Self, Self::Error> {
        SimplicialModule::new(r.ring, r.ranks, r.faces, r.degeneracies)
    }
}

impl From<SimplicialModule> for ModuleRepr {
    fn from(m: SimplicialModule) -> Self {
        ModuleRepr { ring: m.ring, ranks: m.ranks, faces: m.faces, degeneracies: m.degens }
    }
}

impl SimplicialModule {
    /// Validate shapes and every simplicial identity inside the truncation.
    pub fn new(
        ring: Zpe,
        ranks: Vec<usize>,
        faces: Vec<Vec<ZpeMatrix>>,
        degens: Vec<Vec<ZpeMatrix>>,
    ) -> Result<Self, SimplicialError> {
        let m = SimplicialModule { ring, ranks, faces, degens };
        m.check_shapes()?;
        m.check_identities()?;
        Ok(m)
    }

    /// Every structure map the identity.
    pub fn constant(ring: Zpe, rank: usize, level: usize) -> Self {
        let id = ZpeMatrix::identity(ring, rank);
        SimplicialModule {
            ring,
            ranks: vec![rank; level + 1],
            faces: (0..=level).map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] }).collect(),
            degens: (0..level).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    pub fn ring(&self) -> Zpe {
        self.ring
    }
    /// Truncation level `L`.
    pub fn level(&self) -> usize {
        self.ranks.len() - 1
    }
    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
    /// `d_i: M_n -> M_{n-1}`.
    pub fn face(&self, n: usize, i: usize) -> &ZpeMatrix {
        &self.faces[n][i]
    }
    /// `s_i: M_n -> M_{n+1}`.
    pub fn degeneracy(&self, n: usize, i: usize) -> &ZpeMatrix {
        &self.degens[n][i]
    }

    fn check_shapes(&self) -> Result<(), SimplicialError> {
        let l = self.ranks.len();
        if l == 0 {
            return Err(SimplicialError::Shape("at least one level is required".into()));
        }
        if self.faces.len() != l || self.degens.len() != l - 1 {
            return Err(SimplicialError::Shape(format!(
                "expected {l} face lists and {} degeneracy lists",
                l - 1
            )));
        }
        for n in 0..l {
            let expected = if n == 0 { 0 } else { n + 1 };
            if self.faces[n].len() != expected {
                return Err(SimplicialError::Shape(format!("level {n} needs {expected} faces")));
            }
            for (i, f) in self.faces[n].iter().enumerate() {
                if f.ring() != self.ring || f.rows() != self.ranks[n - 1] || f.cols() != self.ranks[n] {
                    return Err(SimplicialError::Shape(format!("face d_{i} on level {n} has the wrong shape")));
                }
            }
            if n + 1 < l {
                if self.degens[n].len() != n + 1 {
                    return Err(SimplicialError::Shape(format!("level {n} needs {} degeneracies", n + 1)));
                }
                for (i, s) in self.degens[n].iter().enumerate() {
                    if s.ring() != self.ring || s.rows() != self.ranks[n + 1] || s.cols() != self.ranks[n] {
                        return Err(SimplicialError::Shape(format!("degeneracy s_{i} on level {n} has the wrong shape")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_identities(&self) -> Result<(), SimplicialError> {
        let level = self.level();
        let fail = |what: String| Err(SimplicialError::Identity(what));
        // d_i d_j = d_{j-1} d_i for i < j, on M_n
        for n in 2..=level {
            for j in 0..=n {
                for i in 0..j {
                    if self.faces[n - 1][i].mul(&self.faces[n][j]) != self.faces[n - 1][j - 1].mul(&self.faces[n][i]) {
                        return fail(format!("d_{i} d_{j} = d_{} d_{i} on level {n}", j - 1));
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j, on M_n
        for n in 0..level.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    if self.degens[n + 1][i].mul(&self.degens[n][j]) != self.degens[n + 1][j + 1].mul(&self.degens[n][i]) {
                        return fail(format!("s_{i} s_{j} = s_{} s_{i} on level {n}", j + 1));
                    }
                }
            }
        }
        // d_i s_j on M_n
        for n in 0..level {
            let id = ZpeMatrix::identity(self.ring, self.ranks[n]);
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.faces[n + 1][i].mul(&self.degens[n][j]);
                    let rhs = if i < j {
                        self.degens[n - 1][j - 1].mul(&self.faces[n][i])
                    } else if i == j || i == j + 1 {
                        id.clone()
                    } else {
                        self.degens[n - 1][j].mul(&self.faces[n][i - 1])
                    };
                    if lhs != rhs {
                        return fail(format!("d_{i} s_{j} on level {n}"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_is_valid() {
        let f3 = Zpe::field(3).unwrap();
        let c = SimplicialModule::constant(f3, 2, 3);
        let again = SimplicialModule::new(f3, c.ranks.clone(), c.faces.clone(), c.degens.clone()).unwrap();
        assert_eq!(again, c);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<SimplicialModule>(&json).unwrap(), c);
    }

    #[test]
    fn broken_identity_rejected() {
        let f3 = Zpe::field(3).unwrap();
        let mut c = SimplicialModule::constant(f3, 1, 2);
        c.faces[1][0] = ZpeMatrix::from_rows(f3, &[vec![2]]).unwrap();
        let err = SimplicialModule::new(f3, c.ranks.clone(), c.faces.clone(), c.degens.clone()).unwrap_err();
        assert!(matches!(err, SimplicialError::Identity(_)));
    }
}
