//! Fincke-Pohst enumeration of (coset) vectors of fixed norm in a negative
//! definite lattice, in exact arithmetic.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::K3Error;
use crate::exact::{isqrt, Rational};
use crate::lattice::Lattice;

/// `x^T P x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2` for `P = -G`.
struct Decomposition {
    diag: Vec<Rational>,
    upper: Vec<Vec<Rational>>,
}

fn decompose(l: &Lattice) -> Result<Decomposition, K3Error> {
    let n = l.rank();
    let mut q: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| Rational::from_integer(-l.gram[(i, j)].clone())).collect())
        .collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(K3Error::NotDefinite);
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for m in k..n {
                let d = &q[k][i] * &q[i][m];
                q[k][m] -= d;
            }
        }
    }
    Ok(Decomposition {
        diag: (0..n).map(|i| q[i][i].clone()).collect(),
        upper: q,
    })
}

struct Search<'a> {
    dec: &'a Decomposition,
    shift: &'a [Rational],
    value: Vec<Rational>,
    out: Vec<Vec<Rational>>,
}

impl Search<'_> {
    fn run(&mut self, i: usize, remaining: Rational) {
        let n = self.value.len();
        let mut c = Rational::zero();
        for j in i + 1..n {
            c += &self.dec.upper[i][j] * &self.value[j];
        }
        let y = &self.shift[i] + &c;
        let bound = &remaining / &self.dec.diag[i];
        // (x + y)^2 <= bound, integers x in a superset range, filtered exactly
        let r = isqrt(&bound.floor().to_integer()) + BigInt::from(1);
        let r = Rational::from_integer(r);
        let lo = (-&y - &r).ceil().to_integer();
        let hi = (-&y + &r).floor().to_integer();
        let mut x = lo;
        while x <= hi {
            let t = Rational::from_integer(x.clone()) + &y;
            let used = &self.dec.diag[i] * &t * &t;
            if used <= remaining {
                let rest = &remaining - &used;
                self.value[i] = &self.shift[i] + Rational::from_integer(x.clone());
                if i == 0 {
                    if rest.is_zero() {
                        self.out.push(self.value.clone());
                    }
                } else {
                    self.run(i - 1, rest);
                }
            }
            x += 1;
        }
    }
}

/// All `v` in `shift + L` with `v.v = t`, sorted lexicographically.
pub fn enumerate_coset_norm(l: &Lattice, shift: &[Rational], t: &Rational) -> Result<Vec<Vec<Rational>>, K3Error> {
    let n = l.rank();
    if shift.len() != n {
        return Err(K3Error::Dimension(format!("shift has {} coordinates, lattice rank {n}", shift.len())));
    }
    let dec = decompose(l)?;
    if t.is_positive() {
        return Ok(Vec::new());
    }
    if n == 0 {
        return Ok(if t.is_zero() { vec![Vec::new()] } else { Vec::new() });
    }
    let mut s = Search {
        dec: &dec,
        shift,
        value: vec![Rational::zero(); n],
        out: Vec::new(),
    };
    s.run(n - 1, -t.clone());
    let mut out = s.out;
    out.sort();
    Ok(out)
}

/// All integer `x` with `x^T G x = t`, sorted lexicographically.
pub fn enumerate_norm(l: &Lattice, t: &Rational) -> Result<Vec<Vec<BigInt>>, K3Error> {
    let zero = vec![Rational::zero(); l.rank()];
    Ok(enumerate_coset_norm(l, &zero, t)?
        .into_iter()
        .map(|v| v.into_iter().map(|c| c.to_integer()).collect())
        .collect())
}
