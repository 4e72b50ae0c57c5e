use crate::scalar::Scalar;

use super::algebra::{add_scaled, is_zero_vec, zero_vec, FiniteHomAlgebra, Vector};
use super::HomAlgError;

/// A hom-algebra whose multiplication is skew by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketAlgebra(FiniteHomAlgebra);

impl BracketAlgebra {
    /// Builds `[e_i, e_j]` from the entries with `i < j`; the diagonal is
    /// zero and `[e_j, e_i] = -[e_i, e_j]`. Entries with `i >= j` in `upper`
    /// are read only to reject inconsistent input: an empty vector there is
    /// skipped, anything else must agree with the skew completion.
    pub fn from_upper(upper: Vec<Vec<Vector>>, alpha: Vec<Vector>) -> Result<Self, HomAlgError> {
        let n = upper.len();
        let mut mult = vec![vec![zero_vec(n); n]; n];
        for i in 0..n {
            if upper[i].len() != n {
                return Err(HomAlgError::Shape("bracket table must be n×n".into()));
            }
            for j in i + 1..n {
                let v = &upper[i][j];
                if v.len() != n {
                    return Err(HomAlgError::Shape(format!(
                        "[e{i}, e{j}] needs {n} entries"
                    )));
                }
                mult[i][j] = v.clone();
                mult[j][i] = v.iter().map(|c| -c).collect();
            }
        }
        for (i, row) in upper.iter().enumerate() {
            for (j, v) in row.iter().enumerate().take(i + 1) {
                if !v.is_empty() && v != &mult[i][j] {
                    return Err(HomAlgError::NotSkew(i, j));
                }
            }
        }
        Ok(BracketAlgebra(FiniteHomAlgebra::new(mult, alpha)?))
    }

    /// Accepts `a` if its multiplication is skew.
    pub fn try_from_algebra(a: FiniteHomAlgebra) -> Result<Self, HomAlgError> {
        if let Some(v) = a.check_skew().first() {
            return Err(HomAlgError::NotSkew(v.indices[0], v.indices[1]));
        }
        Ok(BracketAlgebra(a))
    }

    pub fn algebra(&self) -> &FiniteHomAlgebra {
        &self.0
    }

    pub fn into_algebra(self) -> FiniteHomAlgebra {
        self.0
    }

    pub fn substitute_q(&self, q: &Scalar) -> Result<BracketAlgebra, HomAlgError> {
        Ok(BracketAlgebra(self.0.substitute_q(q)?))
    }

    /// `[x, y]`.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.0.mul(x, y)
    }

    pub fn is_abelian(&self) -> bool {
        self.0
            .mult_table()
            .iter()
            .all(|row| row.iter().all(|v| is_zero_vec(v)))
    }
}

/// `(A, b, α)` with `b(x, y) = m(x, y) - m(y, x)`.
pub fn commutator_algebra(a: &FiniteHomAlgebra) -> BracketAlgebra {
    let n = a.dim();
    let mut mult = vec![vec![zero_vec(n); n]; n];
    for (i, row) in mult.iter_mut().enumerate() {
        for (j, out) in row.iter_mut().enumerate() {
            let mut v = a.product(i, j).to_vec();
            add_scaled(&mut v, &Scalar::from_int(-1), a.product(j, i));
            *out = v;
        }
    }
    BracketAlgebra(
        FiniteHomAlgebra::new(mult, a.alpha_matrix().to_vec()).expect("shapes copied from a"),
    )
}

/// The q-deformed sl2 on the basis `(e, f, h)`:
/// `[h,f] = -2q f`, `[h,e] = 2e`, `[e,f] = (1+q)/2 h`,
/// `α(e) = q e`, `α(f) = q² f`, `α(h) = q h`.
pub fn q_sl2(q: &Scalar) -> BracketAlgebra {
    let (e, f, h) = (0, 1, 2);
    let mut upper = vec![vec![Vec::new(); 3]; 3];
    let vec_at = |k: usize, c: Scalar| {
        let mut v = zero_vec(3);
        v[k] = c;
        v
    };
    let two = Scalar::from_int(2);
    upper[e][f] = vec_at(h, &(&Scalar::one() + q) / &two);
    upper[e][h] = vec_at(e, Scalar::from_int(-2));
    upper[f][h] = vec_at(f, &two * q);
    let mut alpha = vec![zero_vec(3); 3];
    alpha[e][e] = q.clone();
    alpha[f][f] = q * q;
    alpha[h][h] = q.clone();
    BracketAlgebra::from_upper(upper, alpha).expect("3×3 shapes")
}

/// Basis names of [`q_sl2`].
pub const SL2_NAMES: [&str; 3] = ["e", "f", "h"];

#[cfg(test)]
mod tests {
    use super::super::algebra::{basis, example_one};
    use super::*;

    #[test]
    fn classical_sl2_at_q_one() {
        let g = q_sl2(&Scalar::one());
        let (e, f, h) = (basis(3, 0), basis(3, 1), basis(3, 2));
        let scaled = |c: i64, v: &Vector| {
            v.iter()
                .map(|x| x * &Scalar::from_int(c))
                .collect::<Vector>()
        };
        assert_eq!(g.bracket(&h, &e), scaled(2, &e));
        assert_eq!(g.bracket(&h, &f), scaled(-2, &f));
        assert_eq!(g.bracket(&e, &f), h);
        assert!(g.algebra().check_multiplicative().is_empty());
    }

    #[test]
    fn q_sl2_is_hom_lie() {
        for q in [
            Scalar::from_int(0),
            Scalar::from_int(2),
            Scalar::ratio(1, 2),
            Scalar::q(),
        ] {
            let g = q_sl2(&q);
            assert!(g.algebra().check_hom_jacobi().is_empty(), "q = {q}");
            assert!(g.algebra().check_skew().is_empty());
        }
        assert!(!q_sl2(&Scalar::from_int(2))
            .algebra()
            .check_multiplicative()
            .is_empty());
        let two = Scalar::from_int(2);
        assert_eq!(q_sl2(&Scalar::q()).substitute_q(&two).unwrap(), q_sl2(&two));
    }

    #[test]
    fn commutators() {
        let c = commutator_algebra(&example_one(Scalar::one(), Scalar::from_int(2)));
        assert!(c.algebra().check_hom_jacobi().is_empty());
        assert!(c.algebra().check_skew().is_empty());
        let mut mult = vec![vec![zero_vec(1); 1]; 1];
        mult[0][0][0] = Scalar::one();
        let k = FiniteHomAlgebra::untwisted(mult).unwrap();
        assert!(commutator_algebra(&k).is_abelian());
    }

    #[test]
    fn skew_input_is_validated() {
        let mut upper = vec![vec![Vec::new(); 2]; 2];
        upper[0][1] = vec![Scalar::one(), Scalar::zero()];
        let alpha = super::super::algebra::identity(2);
        assert!(BracketAlgebra::from_upper(upper.clone(), alpha.clone()).is_ok());
        upper[1][0] = vec![Scalar::one(), Scalar::zero()];
        assert!(matches!(
            BracketAlgebra::from_upper(upper, alpha),
            Err(HomAlgError::NotSkew(1, 0))
        ));
    }
}
