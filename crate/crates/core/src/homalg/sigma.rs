use crate::scalar::Scalar;

use super::algebra::{add_scaled, zero_vec, Vector};
use super::HomAlgError;

/// `K[t]/(t^N)` with `σ(t^n) = q^n t^n` and `Δ = D_q`, the Jackson
/// q-derivative `D_q(t^n) = (1 + q + .. + q^(n-1)) t^(n-1)`. Vectors hold the
/// coefficients of `1, t, .., t^(N-1)`.
///
/// `Δ(σ(a)) = q σ(Δ(a))`, so `δ = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaDerivationModel {
    n: usize,
    q: Scalar,
}

impl SigmaDerivationModel {
    pub fn new(n: usize, q: Scalar) -> Self {
        SigmaDerivationModel { n, q }
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn delta(&self) -> &Scalar {
        &self.q
    }

    pub fn monomial(&self, k: usize) -> Result<Vector, HomAlgError> {
        if k >= self.n {
            return Err(HomAlgError::Overflow {
                degree: k,
                truncation: self.n,
            });
        }
        let mut v = zero_vec(self.n);
        v[k] = Scalar::one();
        Ok(v)
    }

    fn check(&self, a: &[Scalar]) -> Result<(), HomAlgError> {
        if a.len() != self.n {
            return Err(HomAlgError::Shape(format!(
                "expected {} coefficients, found {}",
                self.n,
                a.len()
            )));
        }
        Ok(())
    }

    fn q_pow(&self, k: usize) -> Scalar {
        (0..k).fold(Scalar::one(), |acc, _| &acc * &self.q)
    }

    pub fn sigma(&self, a: &[Scalar]) -> Vector {
        a.iter()
            .enumerate()
            .map(|(k, c)| {
                if c.is_zero() {
                    c.clone()
                } else {
                    c * &self.q_pow(k)
                }
            })
            .collect()
    }

    pub fn jackson(&self, a: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.n);
        let mut qint = Scalar::zero(); // [k]_q
        for k in 1..self.n {
            qint = &qint + &self.q_pow(k - 1);
            if !a[k].is_zero() {
                out[k - 1] = &a[k] * &qint;
            }
        }
        out
    }

    /// Product in `K[t]/(t^N)`; fails instead of dropping terms.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vector, HomAlgError> {
        let mut out = zero_vec(self.n);
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                if i + j >= self.n {
                    return Err(HomAlgError::Overflow {
                        degree: i + j,
                        truncation: self.n,
                    });
                }
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        Ok(out)
    }

    /// The coefficient of `Δ` in `[aΔ, bΔ] = (σ(a)Δ(b) - σ(b)Δ(a))Δ`.
    /// Requires `deg a + deg b <= N - 1`.
    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vector, HomAlgError> {
        self.check(a)?;
        self.check(b)?;
        let d = degree(a) + degree(b);
        if d >= self.n {
            return Err(HomAlgError::Overflow {
                degree: d,
                truncation: self.n,
            });
        }
        let mut out = self.mul(&self.sigma(a), &self.jackson(b))?;
        add_scaled(
            &mut out,
            &Scalar::from_int(-1),
            &self.mul(&self.sigma(b), &self.jackson(a))?,
        );
        Ok(out)
    }

    /// The cyclic sum of `[σ(a)Δ, [bΔ, cΔ]] + δ [aΔ, [bΔ, cΔ]]` over
    /// `(a, b, c)`. Requires `deg a + deg b + deg c <= N - 1`.
    pub fn six_term_jacobi(
        &self,
        a: &[Scalar],
        b: &[Scalar],
        c: &[Scalar],
    ) -> Result<Vector, HomAlgError> {
        for x in [a, b, c] {
            self.check(x)?;
        }
        let d = degree(a) + degree(b) + degree(c);
        if d >= self.n {
            return Err(HomAlgError::Overflow {
                degree: d,
                truncation: self.n,
            });
        }
        let mut out = zero_vec(self.n);
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            let inner = self.bracket(y, z)?;
            add_scaled(
                &mut out,
                &Scalar::one(),
                &self.bracket(&self.sigma(x), &inner)?,
            );
            add_scaled(&mut out, self.delta(), &self.bracket(x, &inner)?);
        }
        Ok(out)
    }
}

/// Largest index with a nonzero coefficient; `0` for the zero vector.
fn degree(a: &[Scalar]) -> usize {
    a.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::super::algebra::is_zero_vec;
    use super::*;

    #[test]
    fn bracket_examples() {
        let m = SigmaDerivationModel::new(6, Scalar::q());
        let t = m.monomial(1).unwrap();
        let t2 = m.monomial(2).unwrap();
        let one = m.monomial(0).unwrap();
        let mut want = zero_vec(6);
        want[2] = Scalar::q();
        assert_eq!(m.bracket(&t, &t2).unwrap(), want);
        assert!(is_zero_vec(&m.bracket(&t2, &t2).unwrap()));
        assert_eq!(m.bracket(&one, &t).unwrap(), one);
    }

    #[test]
    fn jacobi_small_cases() {
        let m = SigmaDerivationModel::new(8, Scalar::from_int(2));
        let v: Vec<Vector> = (0..3).map(|k| m.monomial(k).unwrap()).collect();
        assert!(is_zero_vec(
            &m.six_term_jacobi(&v[0], &v[1], &v[2]).unwrap()
        ));
        assert!(is_zero_vec(
            &m.six_term_jacobi(&v[1], &v[1], &v[2]).unwrap()
        ));
    }

    #[test]
    fn symbolic_jacobi() {
        let m = SigmaDerivationModel::new(12, Scalar::q());
        let v: Vec<Vector> = (1..4).map(|k| m.monomial(k).unwrap()).collect();
        assert!(is_zero_vec(
            &m.six_term_jacobi(&v[0], &v[1], &v[2]).unwrap()
        ));
    }

    #[test]
    fn overflow_is_an_error() {
        let m = SigmaDerivationModel::new(4, Scalar::from_int(3));
        let t2 = m.monomial(2).unwrap();
        assert!(m.bracket(&t2, &m.monomial(1).unwrap()).is_ok());
        assert!(matches!(
            m.bracket(&t2, &t2),
            Err(HomAlgError::Overflow { .. })
        ));
        assert!(m.monomial(4).is_err());
    }

    #[test]
    fn twisted_commutation_of_sigma_and_delta() {
        let m = SigmaDerivationModel::new(7, Scalar::q());
        for k in 0..7 {
            let x = m.monomial(k).unwrap();
            let lhs = m.jackson(&m.sigma(&x));
            let rhs: Vector = m
                .sigma(&m.jackson(&x))
                .iter()
                .map(|c| c * m.delta())
                .collect();
            assert_eq!(lhs, rhs);
        }
    }
}
