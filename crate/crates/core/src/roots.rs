//! Exact root systems, realised as permutations of root indices.
//!
//! Crystallographic types and `H3`/`H4` are built by closing the simple roots
//! under reflections, with coordinates in the ring of golden integers
//! `Z[phi]`. Dihedral components `I2(m)` with `m > 6` use a combinatorial model
//! (root `k` sits at angle `k*pi/m`), which needs no arithmetic at all.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cartan::{Component, Irreducible};
use crate::error::{Error, Result};

/// `a + b*phi` with `phi = (1 + sqrt 5) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

impl GoldenInt {
    pub const ZERO: GoldenInt = GoldenInt { a: 0, b: 0 };
    pub const PHI: GoldenInt = GoldenInt { a: 0, b: 1 };

    pub const fn int(a: i64) -> Self {
        GoldenInt { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Exact sign (-1, 0 or 1) of the real number `a + b*phi`.
    pub fn signum(self) -> i32 {
        let (a, b) = (self.a as i128, self.b as i128);
        match (a.signum(), b.signum()) {
            (0, 0) => 0,
            (x, y) if x >= 0 && y >= 0 => 1,
            (x, y) if x <= 0 && y <= 0 => -1,
            // a > 0 > b: positive iff a/|b| > phi, i.e. a^2 - a|b| - b^2 > 0
            (1, -1) => {
                if a * a - a * (-b) - b * b > 0 {
                    1
                } else {
                    -1
                }
            }
            // a < 0 < b: positive iff b*phi > |a|, i.e. a^2 - |a|b - b^2 < 0
            _ => {
                if a * a - (-a) * b - b * b < 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

impl Add for GoldenInt {
    type Output = GoldenInt;
    fn add(self, o: GoldenInt) -> GoldenInt {
        GoldenInt { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for GoldenInt {
    type Output = GoldenInt;
    fn sub(self, o: GoldenInt) -> GoldenInt {
        GoldenInt { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt { a: -self.a, b: -self.b }
    }
}

impl Mul for GoldenInt {
    type Output = GoldenInt;
    // phi^2 = phi + 1
    fn mul(self, o: GoldenInt) -> GoldenInt {
        GoldenInt {
            a: self.a * o.a + self.b * o.b,
            b: self.a * o.b + self.b * o.a + self.b * o.b,
        }
    }
}

/// Root indices `0..n_pos` are the positive roots (simple roots first, in
/// generator order); `n_pos + i` is the negative of root `i`.
#[derive(Debug, Clone)]
pub struct RootPermutations {
    pub n_pos: usize,
    /// `action[s][rho]` is the index of `s(rho)`.
    pub action: Vec<Vec<u8>>,
}

impl RootPermutations {
    #[inline]
    pub fn negate(&self, rho: u8) -> u8 {
        let n = self.n_pos as u8;
        if rho < n {
            rho + n
        } else {
            rho - n
        }
    }
}

const MAX_ROOTS: usize = 256;

/// Builds the root permutation representation of the system whose components are given.
pub fn build_root_permutations(matrix: &[Vec<u32>], components: &[Component]) -> Result<RootPermutations> {
    let rank = matrix.len();
    let locals: Vec<LocalRoots> = components
        .iter()
        .map(|c| match c.kind {
            Irreducible::I2(m) if m > 6 => dihedral(m),
            _ => closure(&local_matrix(matrix, c)),
        })
        .collect::<Result<_>>()?;

    let n_pos: usize = locals.iter().map(|l| l.n_pos).sum();
    if 2 * n_pos > MAX_ROOTS {
        return Err(Error::UnsupportedType(format!("{} roots exceed the supported maximum", 2 * n_pos)));
    }
    // global index of each local positive root
    let mut next = rank;
    let maps: Vec<Vec<usize>> = components
        .iter()
        .zip(&locals)
        .map(|(c, l)| {
            (0..l.n_pos)
                .map(|i| {
                    if i < c.generators.len() {
                        c.generators[i]
                    } else {
                        next += 1;
                        next - 1
                    }
                })
                .collect()
        })
        .collect();

    let mut action = vec![(0..2 * n_pos).map(|i| i as u8).collect::<Vec<u8>>(); rank];
    for ((c, l), map) in components.iter().zip(&locals).zip(&maps) {
        let glob = |rho: usize| -> u8 {
            if rho < l.n_pos {
                map[rho] as u8
            } else {
                (map[rho - l.n_pos] + n_pos) as u8
            }
        };
        for (k, &g) in c.generators.iter().enumerate() {
            for rho in 0..2 * l.n_pos {
                action[g][glob(rho) as usize] = glob(l.action[k][rho] as usize);
            }
        }
    }
    Ok(RootPermutations { n_pos, action })
}

struct LocalRoots {
    n_pos: usize,
    action: Vec<Vec<u8>>,
}

/// Generalized Cartan matrix `A[i][j] = <alpha_i^vee, alpha_j>` for a component.
fn local_matrix(matrix: &[Vec<u32>], c: &Component) -> Vec<Vec<GoldenInt>> {
    let g = &c.generators;
    let n = g.len();
    let mut a = vec![vec![GoldenInt::ZERO; n]; n];
    for i in 0..n {
        a[i][i] = GoldenInt::int(2);
        for j in i + 1..n {
            let (x, y) = match matrix[g[i]][g[j]] {
                2 => (GoldenInt::ZERO, GoldenInt::ZERO),
                3 => (GoldenInt::int(-1), GoldenInt::int(-1)),
                4 => (GoldenInt::int(-1), GoldenInt::int(-2)),
                5 => (-GoldenInt::PHI, -GoldenInt::PHI),
                6 => (GoldenInt::int(-1), GoldenInt::int(-3)),
                v => unreachable!("bond {v} handled by the dihedral model"),
            };
            a[i][j] = x;
            a[j][i] = y;
        }
    }
    a
}

fn closure(cartan: &[Vec<GoldenInt>]) -> Result<LocalRoots> {
    let n = cartan.len();
    let reflect = |s: usize, v: &[GoldenInt]| -> Vec<GoldenInt> {
        let mut c = GoldenInt::ZERO;
        for j in 0..n {
            c = c + cartan[s][j] * v[j];
        }
        let mut w = v.to_vec();
        w[s] = w[s] - c;
        w
    };
    let mut roots: Vec<Vec<GoldenInt>> = (0..n)
        .map(|i| (0..n).map(|j| GoldenInt::int((i == j) as i64)).collect())
        .collect();
    let mut index: HashMap<Vec<GoldenInt>, usize> =
        roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    let mut k = 0;
    while k < roots.len() {
        for s in 0..n {
            let w = reflect(s, &roots[k]);
            if !index.contains_key(&w) {
                if roots.len() >= MAX_ROOTS {
                    return Err(Error::InfiniteGroup("root closure does not terminate".into()));
                }
                index.insert(w.clone(), roots.len());
                roots.push(w);
            }
        }
        k += 1;
    }
    let sign = |r: &[GoldenInt]| -> Result<i32> {
        let pos = r.iter().all(|c| c.signum() >= 0);
        let neg = r.iter().all(|c| c.signum() <= 0);
        match (pos, neg) {
            (true, false) => Ok(1),
            (false, true) => Ok(-1),
            _ => Err(Error::InfiniteGroup("root with coefficients of mixed sign".into())),
        }
    };
    // simple roots first, then the other positive roots in discovery order
    let mut positive = Vec::new();
    for (i, r) in roots.iter().enumerate() {
        if sign(r)? > 0 {
            positive.push(i);
        }
    }
    let n_pos = positive.len();
    if 2 * n_pos != roots.len() {
        return Err(Error::InfiniteGroup("root system is not symmetric".into()));
    }
    let mut local = vec![0usize; roots.len()];
    for (li, &gi) in positive.iter().enumerate() {
        local[gi] = li;
        let neg: Vec<GoldenInt> = roots[gi].iter().map(|&c| -c).collect();
        local[index[&neg]] = li + n_pos;
    }
    let mut action = vec![vec![0u8; 2 * n_pos]; n];
    for (s, row) in action.iter_mut().enumerate() {
        for (gi, r) in roots.iter().enumerate() {
            row[local[gi]] = local[index[&reflect(s, r)]] as u8;
        }
    }
    Ok(LocalRoots { n_pos, action })
}

/// Roots of `I2(m)` as angles `k*pi/m`, `k = 0..2m`. The simple roots sit at
/// `k = 0` and `k = m - 1`; positive roots are `k < m`.
fn dihedral(m: u32) -> Result<LocalRoots> {
    let m = m as usize;
    if 2 * m > MAX_ROOTS {
        return Err(Error::UnsupportedType(format!("I2({m}) has too many roots")));
    }
    // local index of angle k: 0 -> 0, m-1 -> 1, 1..m-1 -> 2.., negatives shifted by m
    let pos_index = |k: usize| -> usize {
        if k == 0 {
            0
        } else if k == m - 1 {
            1
        } else {
            k + 1
        }
    };
    let idx = |k: usize| -> u8 {
        let k = k % (2 * m);
        if k < m {
            pos_index(k) as u8
        } else {
            (pos_index(k - m) + m) as u8
        }
    };
    let mut action = vec![vec![0u8; 2 * m]; 2];
    for k in 0..2 * m {
        // reflection in the line orthogonal to the root at angle j: k -> 2j + m - k
        action[0][idx(k) as usize] = idx(3 * m - k);
        action[1][idx(k) as usize] = idx(2 * (m - 1) + 3 * m - k);
    }
    Ok(LocalRoots { n_pos: m, action })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{classify, CartanType};

    fn roots_of(label: &str) -> RootPermutations {
        let t: CartanType = label.parse().unwrap();
        let m = t.coxeter_matrix();
        build_root_permutations(&m, &classify(&m).unwrap()).unwrap()
    }

    #[test]
    fn golden_sign() {
        assert_eq!(GoldenInt { a: 2, b: -1 }.signum(), 1); // 2 - 1.618
        assert_eq!(GoldenInt { a: 1, b: -1 }.signum(), -1);
        assert_eq!(GoldenInt { a: -1, b: 1 }.signum(), 1);
        assert_eq!(GoldenInt { a: -2, b: 1 }.signum(), -1);
        assert_eq!(GoldenInt::ZERO.signum(), 0);
        assert_eq!(GoldenInt::PHI * GoldenInt::PHI, GoldenInt { a: 1, b: 1 });
    }

    #[test]
    fn positive_root_counts() {
        for (label, n) in [
            ("A3", 6),
            ("B3", 9),
            ("D4", 12),
            ("E6", 36),
            ("F4", 24),
            ("H3", 15),
            ("H4", 60),
            ("I2(7)", 7),
            ("G2", 6),
            ("A1xI2(8)", 9),
        ] {
            assert_eq!(roots_of(label).n_pos, n, "{label}");
        }
    }

    #[test]
    fn generators_are_involutions_negating_their_root() {
        for label in ["B4", "H3", "I2(9)", "E6"] {
            let r = roots_of(label);
            for (s, act) in r.action.iter().enumerate() {
                assert_eq!(act[s] as usize, s + r.n_pos);
                for rho in 0..2 * r.n_pos {
                    assert_eq!(act[act[rho] as usize] as usize, rho);
                    assert_eq!(act[r.negate(rho as u8) as usize], r.negate(act[rho]));
                }
            }
        }
    }
}
