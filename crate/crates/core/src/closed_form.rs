//! Closed forms for the simplex, cube and cross-polytope families and for
//! their mixes in rank `n >= 5`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::mixer::{cross_polytope, cube, simplex, MixExpression};

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `T^n = {3,...,3}`
    Simplex,
    /// `B^n = {4,3,...,3}`
    Cube,
    /// `C^n = {3,...,3,4}`
    CrossPolytope,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Simplex, Family::Cube, Family::CrossPolytope];

    pub fn letter(self) -> char {
        match self {
            Family::Simplex => 'T',
            Family::Cube => 'B',
            Family::CrossPolytope => 'C',
        }
    }

    pub fn expression(self, n: usize) -> MixExpression {
        let s = match self {
            Family::Simplex => simplex(n),
            Family::Cube => cube(n),
            Family::CrossPolytope => cross_polytope(n),
        };
        MixExpression::Leaf(s)
    }

    /// Order of the full symmetry group, which is also the flag count.
    pub fn flags(self, n: usize) -> BigUint {
        match self {
            Family::Simplex => factorial(n + 1),
            Family::Cube | Family::CrossPolytope => pow2(n) * factorial(n),
        }
    }

    pub fn faces(self, n: usize, k: usize) -> BigUint {
        match self {
            Family::Simplex => binomial(n + 1, k + 1),
            Family::Cube => pow2(n - k) * binomial(n, k),
            Family::CrossPolytope => pow2(k + 1) * binomial(n, k + 1),
        }
    }
}

/// The four distinct mixes of the rank-n families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConvexMix {
    SimplexCube,
    SimplexCross,
    CubeCross,
    All,
}

impl ConvexMix {
    pub const ALL: [ConvexMix; 4] = [
        ConvexMix::SimplexCube,
        ConvexMix::SimplexCross,
        ConvexMix::CubeCross,
        ConvexMix::All,
    ];

    pub fn families(self) -> &'static [Family] {
        match self {
            ConvexMix::SimplexCube => &[Family::Simplex, Family::Cube],
            ConvexMix::SimplexCross => &[Family::Simplex, Family::CrossPolytope],
            ConvexMix::CubeCross => &[Family::Cube, Family::CrossPolytope],
            ConvexMix::All => &[Family::Simplex, Family::Cube, Family::CrossPolytope],
        }
    }

    pub fn expression(self, n: usize) -> MixExpression {
        self.families()
            .iter()
            .map(|f| f.expression(n))
            .reduce(|a, b| MixExpression::Mix(Box::new(a), Box::new(b)))
            .expect("non-empty")
    }

    /// Whether the mix is a polytope (for every `n >= 5`).
    pub fn polytopal(self) -> bool {
        self != ConvexMix::CubeCross
    }

    pub fn flags(self, n: usize) -> BigUint {
        let nf = factorial(n);
        match self {
            ConvexMix::SimplexCube | ConvexMix::SimplexCross => pow2(n - 1) * &nf * factorial(n + 1),
            ConvexMix::CubeCross => pow2(2 * n - 1) * &nf * &nf,
            ConvexMix::All => pow2(2 * n - 2) * &nf * &nf * factorial(n + 1),
        }
    }

    /// `f_0, ..., f_{n-1}`.
    pub fn faces(self, n: usize) -> Vec<BigUint> {
        let first = match self {
            ConvexMix::SimplexCube => pow2(n - 1) * factorial(n + 1),
            ConvexMix::SimplexCross => big(2 * n * (n + 1)),
            ConvexMix::CubeCross => pow2(n + 1) * big(n),
            ConvexMix::All => pow2(n) * big(n) * factorial(n + 1),
        };
        let last = match self {
            ConvexMix::SimplexCube => big(2 * n * (n + 1)),
            ConvexMix::SimplexCross => pow2(n - 1) * factorial(n + 1),
            ConvexMix::CubeCross => pow2(n + 1) * big(n),
            ConvexMix::All => pow2(n) * big(n) * factorial(n + 1),
        };
        let middle = |k: usize| -> BigUint {
            match self {
                ConvexMix::SimplexCube => pow2(n - k) * factorial(n - k) * binomial(n + 1, k + 1) * binomial(n, k),
                ConvexMix::SimplexCross => {
                    pow2(k + 1) * factorial(k + 1) * binomial(n + 1, k + 1) * binomial(n, k + 1)
                }
                ConvexMix::CubeCross => pow2(n + 2) * binomial(n, k) * binomial(n, k + 1),
                ConvexMix::All => pow2(n + 1) * factorial(n + 1) * binomial(n, k) * binomial(n, k + 1),
            }
        };
        let mut out = vec![first];
        out.extend((1..n - 1).map(middle));
        out.push(last);
        out
    }
}

impl fmt::Display for ConvexMix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.families().iter().map(|x| format!("{}^n", x.letter())).collect();
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[u64]) -> Vec<BigUint> {
        x.iter().map(|&a| BigUint::from(a)).collect()
    }

    #[test]
    fn seeds_in_rank_four() {
        let f: Vec<_> = (0..4).map(|k| Family::Cube.faces(4, k)).collect();
        assert_eq!(f, v(&[16, 32, 24, 8]));
        let f: Vec<_> = (0..4).map(|k| Family::CrossPolytope.faces(4, k)).collect();
        assert_eq!(f, v(&[8, 24, 32, 16]));
        assert_eq!(Family::Simplex.flags(4), BigUint::from(120u32));
        assert_eq!(Family::Cube.flags(4), BigUint::from(384u32));
    }

    #[test]
    fn rank_four_values_agree_with_table_rows() {
        // {1,2}, {1,5} and {2,5} in the rank-4 table.
        assert_eq!(ConvexMix::SimplexCross.faces(4), v(&[40, 480, 1920, 960]));
        assert_eq!(ConvexMix::SimplexCube.faces(4), v(&[960, 1920, 480, 40]));
        assert_eq!(ConvexMix::CubeCross.faces(4), v(&[128, 1536, 1536, 128]));
        assert_eq!(ConvexMix::All.faces(4), v(&[7680, 92160, 92160, 7680]));
        assert_eq!(ConvexMix::All.flags(4), BigUint::from(4423680u64));
    }

    #[test]
    fn simplex_cube_is_dual_to_simplex_cross() {
        for n in 5..=8 {
            let mut a = ConvexMix::SimplexCube.faces(n);
            a.reverse();
            assert_eq!(a, ConvexMix::SimplexCross.faces(n));
        }
    }

    #[test]
    fn expressions() {
        assert_eq!(
            ConvexMix::All.expression(5).to_string(),
            "{3,3,3,3}*{4,3,3,3}*{3,3,3,4}"
        );
        assert_eq!(ConvexMix::CubeCross.to_string(), "B^n*C^n");
    }
}
