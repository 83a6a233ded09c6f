//! Homogeneous trivariate forms, products of linear forms, exact nullspaces
//! and the pencil relation `αR + βW + γT = 0` between three net components.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::plane::Triple;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("cannot form the product of an empty list of lines")]
    EmptyProduct,
    #[error("components have different sizes ({0}, {1}, {2})")]
    SizeMismatch(usize, usize, usize),
    #[error("the three products do not lie in a common pencil")]
    NotInPencil,
    #[error("the pencil relation is not unique (nullspace dimension {0})")]
    Degenerate(usize),
    #[error("a pencil coefficient vanishes")]
    ZeroCoefficient,
}

/// Number of monomials of degree `n` in three variables.
pub fn monomial_count(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Position of `x1^i x2^j x3^(n-i-j)` in graded lexicographic order
/// (`i` descending, then `j` descending).
pub fn monomial_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i + j <= n);
    // Exponent triples with a larger i come first: sum_{i' > i} (n - i' + 1).
    let before = (n - i) * (n - i + 1) / 2;
    before + (n - i - j)
}

/// Exponent triples in graded lexicographic order.
pub fn monomials(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..=n).rev().flat_map(move |i| (0..=n - i).rev().map(move |j| [i, j, n - i - j]))
}

/// A homogeneous form of fixed degree with dense coefficient storage.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomForm {
    degree: usize,
    coeffs: Vec<FieldElement>,
}

impl HomForm {
    pub fn zero(degree: usize) -> Self {
        HomForm { degree, coeffs: vec![FieldElement::ZERO; monomial_count(degree)] }
    }

    pub fn linear(l: &Triple) -> Self {
        HomForm { degree: 1, coeffs: l.to_vec() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients in graded lexicographic monomial order.
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: [usize; 3]) -> FieldElement {
        assert_eq!(exps.iter().sum::<usize>(), self.degree);
        self.coeffs[monomial_index(self.degree, exps[0], exps[1])]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul_linear(&self, f: &Field, l: &Triple) -> HomForm {
        let n = self.degree + 1;
        let mut out = HomForm::zero(n);
        for [i, j, _] in monomials(self.degree) {
            let c = self.coeffs[monomial_index(self.degree, i, j)];
            if c.is_zero() {
                continue;
            }
            for (t, shift) in [(0usize, [1, 0, 0]), (1, [0, 1, 0]), (2, [0, 0, 1])] {
                let idx = monomial_index(n, i + shift[0], j + shift[1]);
                out.coeffs[idx] = f.add(out.coeffs[idx], f.mul(c, l[t]));
            }
        }
        out
    }

    pub fn scale(&self, f: &Field, s: FieldElement) -> HomForm {
        HomForm { degree: self.degree, coeffs: self.coeffs.iter().map(|&c| f.mul(c, s)).collect() }
    }

    pub fn add(&self, f: &Field, other: &HomForm) -> HomForm {
        assert_eq!(self.degree, other.degree);
        HomForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn eval(&self, f: &Field, x: &Triple) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for ([i, j, k], &c) in monomials(self.degree).zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let term = f.mul(f.mul(f.pow(x[0], i as u64), f.pow(x[1], j as u64)), f.pow(x[2], k as u64));
            acc = f.add(acc, f.mul(c, term));
        }
        acc
    }
}

/// The product of the given linear forms.
pub fn product_of_lines(f: &Field, lines: &[Triple]) -> Result<HomForm, FormError> {
    let (first, rest) = lines.split_first().ok_or(FormError::EmptyProduct)?;
    Ok(rest.iter().fold(HomForm::linear(first), |acc, l| acc.mul_linear(f, l)))
}

/// Basis of the right nullspace `{x : M x = 0}` by Gauss-Jordan elimination.
pub fn nullspace(f: &Field, rows: &[Vec<FieldElement>], ncols: usize) -> Vec<Vec<FieldElement>> {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = f.inv(m[row][col]).expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col];
            for (x, &p) in other.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, p));
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![FieldElement::ZERO; ncols];
            v[fc] = FieldElement::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

/// `(α, β, γ)` with `γ = 1` and `αR + βW + γT = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilCoeffs {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
}

/// Solves for the pencil relation between the products of three components.
pub fn pencil_coefficients(
    f: &Field,
    a: &[Triple],
    b: &[Triple],
    c: &[Triple],
) -> Result<PencilCoeffs, FormError> {
    if a.len() != b.len() || b.len() != c.len() {
        return Err(FormError::SizeMismatch(a.len(), b.len(), c.len()));
    }
    let forms = [product_of_lines(f, a)?, product_of_lines(f, b)?, product_of_lines(f, c)?];
    let rows: Vec<Vec<FieldElement>> = (0..forms[0].coeffs().len())
        .map(|i| forms.iter().map(|h| h.coeffs()[i]).collect())
        .collect();
    let basis = nullspace(f, &rows, 3);
    match basis.len() {
        0 => return Err(FormError::NotInPencil),
        1 => {}
        d => return Err(FormError::Degenerate(d)),
    }
    let v = &basis[0];
    if v.iter().any(|x| x.is_zero()) {
        return Err(FormError::ZeroCoefficient);
    }
    let s = f.inv(v[2]).expect("nonzero");
    Ok(PencilCoeffs { alpha: f.mul(v[0], s), beta: f.mul(v[1], s), gamma: FieldElement::ONE })
}

/// `αR + βW + γT` for the given components.
pub fn pencil_residual(
    f: &Field,
    pc: &PencilCoeffs,
    a: &[Triple],
    b: &[Triple],
    c: &[Triple],
) -> Result<HomForm, FormError> {
    let r = product_of_lines(f, a)?.scale(f, pc.alpha);
    let w = product_of_lines(f, b)?.scale(f, pc.beta);
    let t = product_of_lines(f, c)?.scale(f, pc.gamma);
    Ok(r.add(f, &w).add(f, &t))
}
