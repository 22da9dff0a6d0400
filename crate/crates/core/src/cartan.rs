//! Cartan labels, Coxeter matrices, and the finite-type classification.
//!
//! Generator numbering follows the Bourbaki plates, except that in type `B`
//! generator 0 is `t`, the node carrying the 4-bond, and in type `D`
//! generators 0 and 1 are the two fork nodes `s1`, `s1'`, both bonded to `s2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Irreducible finite Coxeter types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Irreducible {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl Irreducible {
    pub fn rank(self) -> usize {
        match self {
            Irreducible::A(n) | Irreducible::B(n) | Irreducible::D(n) => n,
            Irreducible::E(n) | Irreducible::H(n) => n,
            Irreducible::F4 => 4,
            Irreducible::I2(_) => 2,
        }
    }

    /// Group order from the classical product formulas.
    pub fn order(self) -> u128 {
        fn fact(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        match self {
            Irreducible::A(n) => fact(n + 1),
            Irreducible::B(n) => (1u128 << n) * fact(n),
            Irreducible::D(n) => (1u128 << (n - 1)) * fact(n),
            Irreducible::E(6) => 51_840,
            Irreducible::E(7) => 2_903_040,
            Irreducible::E(8) => 696_729_600,
            Irreducible::E(_) => unreachable!("E_n exists only for n = 6, 7, 8"),
            Irreducible::F4 => 1152,
            Irreducible::H(3) => 120,
            Irreducible::H(4) => 14_400,
            Irreducible::H(_) => unreachable!("H_n exists only for n = 3, 4"),
            Irreducible::I2(m) => 2 * m as u128,
        }
    }

    /// Coxeter matrix in the numbering documented at module level.
    pub fn coxeter_matrix(self) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut edge = |i: usize, j: usize, v: u32| {
            m[i][j] = v;
            m[j][i] = v;
        };
        match self {
            Irreducible::A(n) => (1..n).for_each(|i| edge(i - 1, i, 3)),
            Irreducible::B(n) => {
                if n >= 2 {
                    edge(0, 1, 4);
                }
                (2..n).for_each(|i| edge(i - 1, i, 3));
            }
            Irreducible::D(n) => {
                if n >= 3 {
                    edge(0, 2, 3);
                    edge(1, 2, 3);
                }
                (3..n).for_each(|i| edge(i - 1, i, 3));
            }
            Irreducible::E(n) => {
                edge(0, 2, 3);
                edge(1, 3, 3);
                (3..n).for_each(|i| edge(i - 1, i, 3));
            }
            Irreducible::F4 => {
                edge(0, 1, 3);
                edge(1, 2, 4);
                edge(2, 3, 3);
            }
            Irreducible::H(n) => {
                edge(0, 1, 5);
                (2..n).for_each(|i| edge(i - 1, i, 3));
            }
            Irreducible::I2(k) => edge(0, 1, k),
        }
        m
    }
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Irreducible::A(n) => write!(f, "A{n}"),
            Irreducible::B(n) => write!(f, "B{n}"),
            Irreducible::D(n) => write!(f, "D{n}"),
            Irreducible::E(n) => write!(f, "E{n}"),
            Irreducible::F4 => write!(f, "F4"),
            Irreducible::H(n) => write!(f, "H{n}"),
            Irreducible::I2(6) => write!(f, "G2"),
            Irreducible::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// A (possibly reducible) Cartan label such as `B3` or `A1xI2(5)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanType(pub Vec<Irreducible>);

impl CartanType {
    pub fn irreducible(t: Irreducible) -> Self {
        CartanType(vec![t])
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|c| c.rank()).sum()
    }

    pub fn order(&self) -> u128 {
        self.0.iter().map(|c| c.order()).product()
    }

    pub fn is_irreducible(&self) -> bool {
        self.0.len() == 1
    }

    /// Block-diagonal Coxeter matrix, components in label order.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        let mut off = 0;
        for c in &self.0 {
            let b = c.coxeter_matrix();
            for (i, row) in b.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m[off + i][off + j] = v;
                }
            }
            off += c.rank();
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        m
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "A0");
        }
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Irreducible {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedType(s.to_string());
        let upper = s.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2(") {
            let m: u32 = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if m < 2 {
                return Err(bad());
            }
            return Ok(Irreducible::I2(m));
        }
        let (head, tail) = upper.split_at(1.min(upper.len()));
        let n: usize = tail.parse().map_err(|_| bad())?;
        let t = match (head, n) {
            ("A", n) if n >= 1 => Irreducible::A(n),
            ("B", n) if n >= 2 => Irreducible::B(n),
            ("C", n) if n >= 2 => Irreducible::B(n),
            ("D", n) if n >= 2 => Irreducible::D(n),
            ("E", 6..=8) => Irreducible::E(n),
            ("F", 4) => Irreducible::F4,
            ("G", 2) => Irreducible::I2(6),
            ("H", 3 | 4) => Irreducible::H(n),
            _ => return Err(bad()),
        };
        Ok(t)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("A0") {
            return Ok(CartanType(Vec::new()));
        }
        // Components are joined by `x` or `*`; `I2(m)` never contains either.
        let parts = s.split(['x', '*', 'X']).map(str::parse).collect::<Result<Vec<_>>>()?;
        Ok(CartanType(parts))
    }
}

/// Validates a Coxeter matrix: square, symmetric, unit diagonal, off-diagonal >= 2.
pub fn validate_matrix(m: &[Vec<u32>]) -> Result<()> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidMatrix(format!("row {i} has length {}", row.len())));
        }
        for (j, &v) in row.iter().enumerate() {
            if i == j && v != 1 {
                return Err(Error::InvalidMatrix(format!("m({i},{i}) = {v}, expected 1")));
            }
            if i != j && v < 2 {
                return Err(Error::InvalidMatrix(format!("m({i},{j}) = {v} < 2")));
            }
            if m[j][i] != v {
                return Err(Error::InvalidMatrix(format!("m({i},{j}) != m({j},{i})")));
            }
        }
    }
    Ok(())
}

/// One connected component of a Coxeter graph, with its generators (sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: Irreducible,
    pub generators: Vec<usize>,
}

/// Splits the Coxeter graph into connected components and identifies each
/// one as a finite type; any non-finite component yields `InfiniteGroup`.
pub fn classify(m: &[Vec<u32>]) -> Result<Vec<Component>> {
    validate_matrix(m)?;
    let n = m.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && m[i][j] >= 3 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        let kind = classify_connected(m, &comp)?;
        out.push(Component { kind, generators: comp });
    }
    Ok(out)
}

fn classify_connected(m: &[Vec<u32>], comp: &[usize]) -> Result<Irreducible> {
    let n = comp.len();
    let infinite = || Error::InfiniteGroup(format!("component on generators {comp:?} is not of finite type"));
    if n == 1 {
        return Ok(Irreducible::A(1));
    }
    if n == 2 {
        return Ok(match m[comp[0]][comp[1]] {
            3 => Irreducible::A(2),
            4 => Irreducible::B(2),
            k => Irreducible::I2(k),
        });
    }
    let mut edges = Vec::new();
    let mut degree = vec![0usize; n];
    for a in 0..n {
        for b in a + 1..n {
            let v = m[comp[a]][comp[b]];
            if v >= 3 {
                if v > 5 {
                    return Err(infinite());
                }
                edges.push((a, b, v));
                degree[a] += 1;
                degree[b] += 1;
            }
        }
    }
    if edges.len() != n - 1 || degree.iter().any(|&d| d > 3) {
        return Err(infinite());
    }
    let heavy: Vec<_> = edges.iter().filter(|e| e.2 > 3).collect();
    let branch: Vec<usize> = (0..n).filter(|&v| degree[v] == 3).collect();
    if branch.len() > 1 || (branch.len() == 1 && !heavy.is_empty()) || heavy.len() > 1 {
        return Err(infinite());
    }
    let neighbours = |v: usize| -> Vec<usize> {
        edges
            .iter()
            .filter_map(|&(a, b, _)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    };
    if let Some(&c) = branch.first() {
        let mut arms: Vec<usize> = neighbours(c)
            .into_iter()
            .map(|mut v| {
                let mut prev = c;
                let mut len = 1;
                loop {
                    let next: Vec<_> = neighbours(v).into_iter().filter(|&u| u != prev).collect();
                    match next.as_slice() {
                        [] => break len,
                        [u] => {
                            prev = v;
                            v = *u;
                            len += 1;
                        }
                        _ => unreachable!("single branch point"),
                    }
                }
            })
            .collect();
        arms.sort_unstable();
        return match arms.as_slice() {
            [1, 1, k] => Ok(Irreducible::D(k + 3)),
            [1, 2, 2] => Ok(Irreducible::E(6)),
            [1, 2, 3] => Ok(Irreducible::E(7)),
            [1, 2, 4] => Ok(Irreducible::E(8)),
            _ => Err(infinite()),
        };
    }
    // A path: position of the heavy edge decides the type.
    let Some(&&(a, b, v)) = heavy.first() else {
        return Ok(Irreducible::A(n));
    };
    let at_end = degree[a] == 1 || degree[b] == 1;
    match (v, at_end, n) {
        (4, true, _) => Ok(Irreducible::B(n)),
        (4, false, 4) => Ok(Irreducible::F4),
        (5, true, 3 | 4) => Ok(Irreducible::H(n)),
        _ => Err(infinite()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for s in ["A3", "B4", "D5", "E6", "F4", "H3", "H4", "I2(7)", "G2", "A1xB2"] {
            let t: CartanType = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert!("E9".parse::<CartanType>().is_err());
        assert!("Q3".parse::<CartanType>().is_err());
    }

    #[test]
    fn classification_recovers_labels() {
        for s in ["A4", "B5", "D4", "D6", "E6", "E7", "E8", "F4", "H3", "H4", "I2(8)", "B2", "A2"] {
            let t: CartanType = s.parse().unwrap();
            let comps = classify(&t.coxeter_matrix()).unwrap();
            assert_eq!(comps.len(), 1, "{s}");
            assert_eq!(comps[0].kind.to_string(), s);
        }
    }

    #[test]
    fn affine_matrices_are_rejected() {
        // triangle of 3-bonds: affine A2
        let m = vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]];
        assert!(matches!(classify(&m), Err(Error::InfiniteGroup(_))));
        // 4-3-4: affine C2
        let m = vec![vec![1, 4, 2], vec![4, 1, 4], vec![2, 4, 1]];
        assert!(matches!(classify(&m), Err(Error::InfiniteGroup(_))));
        // 3-6 path
        let m = vec![vec![1, 3, 2], vec![3, 1, 6], vec![2, 6, 1]];
        assert!(classify(&m).is_err());
    }

    #[test]
    fn d_type_fork_is_on_the_first_two_nodes() {
        let m = Irreducible::D(4).coxeter_matrix();
        assert_eq!(m[0][2], 3);
        assert_eq!(m[1][2], 3);
        assert_eq!(m[0][1], 2);
        assert_eq!(m[2][3], 3);
    }
}
