use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntegerMatrix, QPoly};

/// Minimal polynomial over the rationals, found as the first linear relation
/// among `I, m, m^2, ...` by incremental exact elimination.
pub fn minimal_polynomial(m: &IntegerMatrix) -> QPoly {
    let n = m.n();
    // Each basis row: (pivot column, reduced vector, combination of powers).
    let mut basis: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
    let mut power = IntegerMatrix::identity(n);
    for k in 0..=n {
        let mut v: Vec<BigRational> = power
            .entries()
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let mut combo = vec![BigRational::zero(); k + 1];
        combo[k] = BigRational::one();
        for (pivot, row, row_combo) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = &v[*pivot] / &row[*pivot];
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &factor * r;
            }
            for (c, rc) in combo.iter_mut().zip(row_combo) {
                *c -= &factor * rc;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return QPoly::new(combo),
            Some(pivot) => basis.push((pivot, v, combo)),
        }
        power = power.mul(m);
    }
    unreachable!("Cayley-Hamilton bounds the degree of the minimal polynomial by n")
}

/// Diagonalizable over the complex numbers, decided exactly: the minimal
/// polynomial is squarefree.
pub fn is_semisimple(m: &IntegerMatrix) -> bool {
    minimal_polynomial(m).is_squarefree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::char_poly;

    #[test]
    fn semisimplicity_examples() {
        assert!(is_semisimple(&IntegerMatrix::identity(4)));
        assert!(!is_semisimple(&IntegerMatrix::from_i64_rows(&[[1, 1], [0, 1]])));
        assert!(is_semisimple(&IntegerMatrix::from_i64_rows(&[[1, 5], [5, 26]])));
        assert!(is_semisimple(&IntegerMatrix::from_i64_rows(&[[0, -1], [1, 0]])));
        // -I + nilpotent block
        assert!(!is_semisimple(&IntegerMatrix::from_i64_rows(&[
            [-1, 7, 0],
            [0, -1, 0],
            [0, 0, 1]
        ])));
    }

    #[test]
    fn minimal_polynomial_of_scalar_and_block() {
        let mp = minimal_polynomial(&IntegerMatrix::identity(3));
        assert_eq!(mp.degree(), Some(1));
        // diag(2, 2, 3): minimal polynomial (X-2)(X-3), char poly has a square
        let m = IntegerMatrix::from_i64_rows(&[[2, 0, 0], [0, 2, 0], [0, 0, 3]]);
        let mp = minimal_polynomial(&m);
        assert_eq!(mp.degree(), Some(2));
        assert!(mp.divides(&char_poly(&m).to_qpoly()));
        assert!(mp.eval_matrix(&m).unwrap().is_zero());
    }
}
