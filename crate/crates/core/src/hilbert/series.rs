use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::automaton::BottomUpAutomaton;

/// A power series in `a` and `m` truncated above total degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    degree: usize,
    // coeffs[i][j] is the coefficient of a^i m^j, i + j <= degree.
    coeffs: Vec<Vec<BigRational>>,
}

impl BivariateSeries {
    pub fn zero(degree: usize) -> Self {
        BivariateSeries {
            degree,
            coeffs: (0..=degree)
                .map(|i| vec![BigRational::zero(); degree - i + 1])
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Zero outside the truncation.
    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        if i + j > self.degree {
            return BigRational::zero();
        }
        self.coeffs[i][j].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, c: BigRational) {
        assert!(i + j <= self.degree, "a^{i} m^{j} beyond truncation");
        self.coeffs[i][j] = c;
    }

    fn add_at(&mut self, i: usize, j: usize, c: &BigRational) {
        self.coeffs[i][j] += c;
    }

    /// `(i, j, coefficient)` in graded order: by `i + j`, then by `i`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> + '_ {
        (0..=self.degree)
            .flat_map(move |n| (0..=n).map(move |i| (i, n - i, &self.coeffs[i][n - i])))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree.min(other.degree));
        for i in 0..=out.degree {
            for j in 0..=out.degree - i {
                out.coeffs[i][j] = &self.coeffs[i][j] + &other.coeffs[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree.min(other.degree));
        for i in 0..=out.degree {
            for j in 0..=out.degree - i {
                out.coeffs[i][j] = &self.coeffs[i][j] - &other.coeffs[i][j];
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree.min(other.degree);
        let mut out = Self::zero(d);
        for (i1, j1, x) in self.iter().filter(|(i, j, _)| i + j <= d) {
            if x.is_zero() {
                continue;
            }
            for (i2, j2, y) in other.iter().take_while(|(i, j, _)| i1 + j1 + i + j <= d) {
                if !y.is_zero() {
                    out.add_at(i1 + i2, j1 + j2, &(x * y));
                }
            }
        }
        out
    }
}

/// One `a^i m^j<TAB>c` line per coefficient, graded order, zeros included.
impl fmt::Display for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j, c) in self.iter() {
            writeln!(f, "a^{i} m^{j}\t{c}")?;
        }
        Ok(())
    }
}

pub fn series_sub(x: &BivariateSeries, y: &BivariateSeries) -> BivariateSeries {
    x.sub(y)
}

/// The least solution of
/// `G_b = [b = leaf] + a Σ_{f_a(c)=b} G_c + m Σ_{f_m(c,d)=b} G_c G_d`,
/// truncated at total degree `degree`. Both productions raise total degree by
/// one, so coefficients of degree `n` only read coefficients of degree `< n`.
pub fn solve_series(aut: &BottomUpAutomaton, degree: usize) -> Vec<BivariateSeries> {
    let n = aut.len();
    let mut g = vec![BivariateSeries::zero(degree); n];
    g[aut.leaf_state()].set(0, 0, BigRational::one());
    for total in 1..=degree {
        for c in 0..n {
            let b = aut.f_a(c);
            for i in 1..=total {
                let j = total - i;
                let x = g[c].coeffs[i - 1][j].clone();
                if !x.is_zero() {
                    g[b].add_at(i, j, &x);
                }
            }
        }
        for c in 0..n {
            for d in 0..n {
                let b = aut.f_m(c, d);
                // a^i m^j with j >= 1: Σ G_c[i1][j1] G_d[i - i1][j - 1 - j1]
                for j in 1..=total {
                    let i = total - j;
                    let mut acc = BigRational::zero();
                    for i1 in 0..=i {
                        for j1 in 0..j {
                            let x = &g[c].coeffs[i1][j1];
                            let y = &g[d].coeffs[i - i1][j - 1 - j1];
                            if !x.is_zero() && !y.is_zero() {
                                acc += x * y;
                            }
                        }
                    }
                    if !acc.is_zero() {
                        g[b].add_at(i, j, &acc);
                    }
                }
            }
        }
    }
    g
}

/// `(1/(l+1)) (k+2l)! / (k! l! l!)`, the number of plane monomials with `k`
/// unary and `l` binary vertices.
pub fn free_coefficient(k: usize, l: usize) -> BigInt {
    let fact = |n: usize| (1..=n).fold(BigInt::one(), |acc, x| acc * BigInt::from(x));
    fact(k + 2 * l) / (fact(k) * fact(l) * fact(l) * BigInt::from(l + 1))
}

/// The series of all plane monomials, from the closed form.
pub fn free_series(degree: usize) -> BivariateSeries {
    let mut out = BivariateSeries::zero(degree);
    for i in 0..=degree {
        for j in 0..=degree - i {
            out.set(i, j, BigRational::from_integer(free_coefficient(i, j)));
        }
    }
    out
}
