use std::fmt;

use crate::scalar::Scalar;

use super::HomAlgError;

/// Coefficient vector with respect to the basis `e_0, .., e_{n-1}`.
pub type Vector = Vec<Scalar>;

pub(crate) fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub(crate) fn basis(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub(crate) fn add_scaled(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

pub(crate) fn sub_vec(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub(crate) fn is_zero_vec(x: &[Scalar]) -> bool {
    x.iter().all(Scalar::is_zero)
}

/// A hom-algebra `(A, m, α)` on `K^n`.
///
/// `mult[i][j][k]` is the coefficient of `e_k` in `m(e_i, e_j)`;
/// `alpha[j][i]` is the coefficient of `e_j` in `α(e_i)`, so `alpha` acts on
/// column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHomAlgebra {
    dim: usize,
    mult: Vec<Vec<Vector>>,
    alpha: Vec<Vector>,
}

impl FiniteHomAlgebra {
    pub fn new(mult: Vec<Vec<Vector>>, alpha: Vec<Vector>) -> Result<Self, HomAlgError> {
        let n = mult.len();
        let square = |m: &Vec<Vector>| m.len() == n && m.iter().all(|v| v.len() == n);
        if !mult.iter().all(square) {
            return Err(HomAlgError::Shape("mult must be n×n×n".into()));
        }
        if !square(&alpha) {
            return Err(HomAlgError::Shape("alpha must be n×n".into()));
        }
        Ok(FiniteHomAlgebra {
            dim: n,
            mult,
            alpha,
        })
    }

    /// An ordinary algebra, with `α` the identity.
    pub fn untwisted(mult: Vec<Vec<Vector>>) -> Result<Self, HomAlgError> {
        let n = mult.len();
        Self::new(mult, identity(n))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult_table(&self) -> &[Vec<Vector>] {
        &self.mult
    }

    pub fn alpha_matrix(&self) -> &[Vector] {
        &self.alpha
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    add_scaled(&mut out, &(xi * yj), &self.mult[i][j]);
                }
            }
        }
        out
    }

    pub fn alpha(&self, x: &[Scalar]) -> Vector {
        apply(&self.alpha, x)
    }

    fn e(&self, i: usize) -> Vector {
        basis(self.dim, i)
    }

    /// `m(e_i, e_j)`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i][j]
    }

    fn triples(&self) -> impl Iterator<Item = [usize; 3]> {
        let n = self.dim;
        (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| [i, j, k])))
    }

    fn pairs(&self) -> impl Iterator<Item = [usize; 2]> {
        let n = self.dim;
        (0..n).flat_map(move |i| (0..n).map(move |j| [i, j]))
    }

    /// `m(m(x,y),z) - m(x,m(y,z))`.
    pub fn associator(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        sub_vec(&self.mul(&self.mul(x, y), z), &self.mul(x, &self.mul(y, z)))
    }

    /// `m(α(x), m(y,z)) - m(m(x,y), α(z))`.
    pub fn hom_associator(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        sub_vec(
            &self.mul(&self.alpha(x), &self.mul(y, z)),
            &self.mul(&self.mul(x, y), &self.alpha(z)),
        )
    }

    pub fn hom_jacobiator(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let mut out = self.mul(&self.alpha(x), &self.mul(y, z));
        add_scaled(
            &mut out,
            &Scalar::one(),
            &self.mul(&self.alpha(y), &self.mul(z, x)),
        );
        add_scaled(
            &mut out,
            &Scalar::one(),
            &self.mul(&self.alpha(z), &self.mul(x, y)),
        );
        out
    }

    fn check3(
        &self,
        identity: Identity,
        f: impl Fn(&[Scalar], &[Scalar], &[Scalar]) -> Vector,
    ) -> Vec<Violation> {
        self.triples()
            .filter_map(|[i, j, k]| {
                let d = f(&self.e(i), &self.e(j), &self.e(k));
                (!is_zero_vec(&d)).then(|| Violation {
                    identity,
                    indices: vec![i, j, k],
                    defect: d,
                })
            })
            .collect()
    }

    fn check2(
        &self,
        identity: Identity,
        f: impl Fn(&[Scalar], &[Scalar]) -> Vector,
    ) -> Vec<Violation> {
        self.pairs()
            .filter_map(|[i, j]| {
                let d = f(&self.e(i), &self.e(j));
                (!is_zero_vec(&d)).then(|| Violation {
                    identity,
                    indices: vec![i, j],
                    defect: d,
                })
            })
            .collect()
    }

    pub fn check_associative(&self) -> Vec<Violation> {
        self.check3(Identity::Associative, |x, y, z| self.associator(x, y, z))
    }

    pub fn check_hom_associative(&self) -> Vec<Violation> {
        self.check3(Identity::HomAssociative, |x, y, z| {
            self.hom_associator(x, y, z)
        })
    }

    pub fn check_hom_jacobi(&self) -> Vec<Violation> {
        self.check3(Identity::HomJacobi, |x, y, z| self.hom_jacobiator(x, y, z))
    }

    /// `m(e_i, e_i) = 0` and `m(e_i, e_j) = -m(e_j, e_i)`; together these give
    /// `m(x, x) = 0` for every `x`.
    pub fn check_skew(&self) -> Vec<Violation> {
        self.check2(Identity::Skew, |x, y| {
            if x == y {
                self.mul(x, x)
            } else {
                let mut s = self.mul(x, y);
                add_scaled(&mut s, &Scalar::one(), &self.mul(y, x));
                s
            }
        })
    }

    /// `m(α(x), α(y)) - α(m(x, y))`.
    pub fn check_multiplicative(&self) -> Vec<Violation> {
        self.check2(Identity::Multiplicative, |x, y| {
            sub_vec(
                &self.mul(&self.alpha(x), &self.alpha(y)),
                &self.alpha(&self.mul(x, y)),
            )
        })
    }

    /// `α(m(x,y)) = m(α(x), y) = m(x, α(y))`; the defect is the two
    /// differences against `α(m(x,y))`, concatenated.
    pub fn check_centroid(&self) -> Vec<Violation> {
        self.check2(Identity::Centroid, |x, y| {
            let amxy = self.alpha(&self.mul(x, y));
            let mut d = sub_vec(&self.mul(&self.alpha(x), y), &amxy);
            d.extend(sub_vec(&self.mul(x, &self.alpha(y)), &amxy));
            d
        })
    }

    pub fn check(&self, identity: Identity) -> Vec<Violation> {
        match identity {
            Identity::Associative => self.check_associative(),
            Identity::HomAssociative => self.check_hom_associative(),
            Identity::HomJacobi => self.check_hom_jacobi(),
            Identity::Skew => self.check_skew(),
            Identity::Multiplicative => self.check_multiplicative(),
            Identity::Centroid => self.check_centroid(),
        }
    }

    /// Whether `e` is a two-sided unit for `m`.
    pub fn is_unit(&self, e: &[Scalar]) -> bool {
        (0..self.dim).all(|i| {
            let x = self.e(i);
            self.mul(e, &x) == x && self.mul(&x, e) == x
        })
    }

    /// Basis pairs `(i, j)` with `β(m(e_i, e_j)) != m(β(e_i), β(e_j))`.
    pub fn weak_morphism_defects(&self, beta: &[Vector]) -> Vec<Violation> {
        self.check2(Identity::Multiplicative, |x, y| {
            sub_vec(
                &apply(beta, &self.mul(x, y)),
                &self.mul(&apply(beta, x), &apply(beta, y)),
            )
        })
    }

    /// Replaces `m` by `(x, y) ↦ f(m(x, y))` and `α` by `g ∘ α`.
    fn map_structure(&self, f: &[Vector], g: &[Vector]) -> FiniteHomAlgebra {
        let mult = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| apply(f, &self.mult[i][j])).collect())
            .collect();
        FiniteHomAlgebra {
            dim: self.dim,
            mult,
            alpha: mat_mul(g, &self.alpha),
        }
    }

    /// Evaluates every symbolic structure constant at `q`, which must be a
    /// rational number that is not a pole of any of them.
    pub fn substitute_q(&self, q: &Scalar) -> Result<FiniteHomAlgebra, HomAlgError> {
        let q = q.as_rational().ok_or(HomAlgError::SymbolicValue)?;
        let ev = |c: &Scalar| c.eval_at(q).ok_or(HomAlgError::Pole);
        let vec = |v: &Vector| v.iter().map(ev).collect::<Result<Vector, _>>();
        Ok(FiniteHomAlgebra {
            dim: self.dim,
            mult: self
                .mult
                .iter()
                .map(|row| row.iter().map(vec).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()?,
            alpha: self.alpha.iter().map(vec).collect::<Result<_, _>>()?,
        })
    }

    /// The same structure in the basis `f_i = Σ_k p[k][i] e_k`; `p` must be
    /// invertible.
    pub fn change_basis(&self, p: &[Vector]) -> Result<FiniteHomAlgebra, HomAlgError> {
        check_square(p, self.dim)?;
        let pinv = inverse(p).ok_or(HomAlgError::Singular)?;
        let col = |i: usize| -> Vector { p.iter().map(|row| row[i].clone()).collect() };
        let cols: Vec<Vector> = (0..self.dim).map(col).collect();
        let mult = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| apply(&pinv, &self.mul(&cols[i], &cols[j])))
                    .collect()
            })
            .collect();
        let alpha = mat_mul(&pinv, &mat_mul(&self.alpha, p));
        Ok(FiniteHomAlgebra {
            dim: self.dim,
            mult,
            alpha,
        })
    }
}

impl fmt::Display for FiniteHomAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            for j in 0..self.dim {
                writeln!(f, "m(e{i}, e{j}) = {}", show_vec(&self.mult[i][j]))?;
            }
        }
        for i in 0..self.dim {
            let col: Vector = self.alpha.iter().map(|r| r[i].clone()).collect();
            writeln!(f, "α(e{i}) = {}", show_vec(&col))?;
        }
        Ok(())
    }
}

/// `Σ c_k e_k`, with `0` for the zero vector.
pub fn show_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            if c.is_one() {
                format!("e{k}")
            } else {
                format!("({c})*e{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    Associative,
    HomAssociative,
    HomJacobi,
    Skew,
    Multiplicative,
    Centroid,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::Associative,
        Identity::HomAssociative,
        Identity::HomJacobi,
        Identity::Skew,
        Identity::Multiplicative,
        Identity::Centroid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Associative => "assoc",
            Identity::HomAssociative => "hom-assoc",
            Identity::HomJacobi => "hom-jacobi",
            Identity::Skew => "skew",
            Identity::Multiplicative => "multiplicative",
            Identity::Centroid => "centroid",
        }
    }

    pub fn parse(s: &str) -> Option<Identity> {
        Self::ALL.into_iter().find(|i| i.name() == s.trim())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A basis tuple on which an identity fails, with the nonzero defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: Identity,
    pub indices: Vec<usize>,
    pub defect: Vector,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| format!("e{i}")).collect();
        write!(
            f,
            "{}({}): {}",
            self.identity,
            idx.join(", "),
            show_vec(&self.defect)
        )
    }
}

pub fn identity(n: usize) -> Vec<Vector> {
    (0..n).map(|i| basis(n, i)).collect()
}

pub fn apply(mat: &[Vector], x: &[Scalar]) -> Vector {
    mat.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

pub fn mat_mul(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Scalar::zero(), |acc, (x, brow)| &acc + &(x * &brow[j]))
                })
                .collect()
        })
        .collect()
}

pub(crate) fn check_square(m: &[Vector], n: usize) -> Result<(), HomAlgError> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(HomAlgError::Shape(format!("expected a {n}×{n} matrix")));
    }
    Ok(())
}

/// Gauss-Jordan inverse; `None` if singular.
pub fn inverse(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let mut a: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(basis(n, i));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip().ok()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Result of a Yau twist together with the weak-morphism precondition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub algebra: FiniteHomAlgebra,
    /// Empty iff `β` is a weak morphism of the input.
    pub weak_morphism_defects: Vec<Violation>,
}

impl Twist {
    pub fn beta_is_weak_morphism(&self) -> bool {
        self.weak_morphism_defects.is_empty()
    }
}

/// `(A, β ∘ m, β ∘ α)`. The precondition that `β` is a weak morphism is
/// checked and reported, not enforced.
pub fn yau_twist(a: &FiniteHomAlgebra, beta: &[Vector]) -> Result<Twist, HomAlgError> {
    check_square(beta, a.dim)?;
    Ok(Twist {
        algebra: a.map_structure(beta, beta),
        weak_morphism_defects: a.weak_morphism_defects(beta),
    })
}

/// `m_1(x, y) = m(α(x), y)` and `m_2(x, y) = m(α(x), α(y))`, both with the
/// given `α`, built on the multiplication of `a`.
pub fn centroid_products(
    a: &FiniteHomAlgebra,
    alpha: &[Vector],
) -> Result<(FiniteHomAlgebra, FiniteHomAlgebra), HomAlgError> {
    check_square(alpha, a.dim)?;
    let n = a.dim;
    let e = |i| basis(n, i);
    let m1 = (0..n)
        .map(|i| (0..n).map(|j| a.mul(&apply(alpha, &e(i)), &e(j))).collect())
        .collect();
    let m2 = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| a.mul(&apply(alpha, &e(i)), &apply(alpha, &e(j))))
                .collect()
        })
        .collect();
    Ok((
        FiniteHomAlgebra::new(m1, alpha.to_vec())?,
        FiniteHomAlgebra::new(m2, alpha.to_vec())?,
    ))
}

/// The three-dimensional algebra with parameters `a`, `b`:
/// `m(e1,e1) = a e1`, `m(e2,e2) = m(e1,e2) = m(e2,e1) = a e2`,
/// `m(e1,e3) = m(e3,e1) = m(e2,e3) = b e3`, `m(e3,e2) = m(e3,e3) = 0`,
/// `α = diag(a, a, b)`. Basis indices are zero-based.
pub fn example_one(a: Scalar, b: Scalar) -> FiniteHomAlgebra {
    let n = 3;
    let mut mult = vec![vec![zero_vec(n); n]; n];
    mult[0][0][0] = a.clone();
    mult[1][1][1] = a.clone();
    mult[0][1][1] = a.clone();
    mult[1][0][1] = a.clone();
    mult[0][2][2] = b.clone();
    mult[2][0][2] = b.clone();
    mult[1][2][2] = b.clone();
    let mut alpha = vec![zero_vec(n); n];
    alpha[0][0] = a.clone();
    alpha[1][1] = a;
    alpha[2][2] = b;
    FiniteHomAlgebra::new(mult, alpha).expect("3×3 shapes")
}
