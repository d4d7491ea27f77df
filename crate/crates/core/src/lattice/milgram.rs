//! Gauss sums `sum_x exp(pi i q(x))` evaluated exactly in `Z[zeta_m]`.

use num_integer::Integer;

use super::disc::DiscriminantForm;
use super::LatticeError;

/// Element of `Z[x]/Phi_m(x)`, i.e. of `Z[zeta_m]`, stored as reduced
/// coefficients of degree `< phi(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cyclotomic {
    coeffs: Vec<i128>,
}

/// Coefficients of the `m`-th cyclotomic polynomial, lowest degree first.
fn cyclotomic_poly(m: usize) -> Vec<i128> {
    let divisors: Vec<usize> = (1..=m).filter(|d| m % d == 0).collect();
    let mut polys: Vec<Vec<i128>> = Vec::with_capacity(divisors.len());
    for (i, &d) in divisors.iter().enumerate() {
        // x^d - 1 divided by Phi_e for every proper divisor e of d
        let mut p = vec![0i128; d + 1];
        p[0] = -1;
        p[d] = 1;
        for (j, &e) in divisors[..i].iter().enumerate() {
            if d % e == 0 {
                p = exact_div(&p, &polys[j]);
            }
        }
        polys.push(p);
    }
    polys.pop().expect("m >= 1")
}

fn exact_div(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut q = vec![0i128; r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] / lead;
        q[k] = c;
        for (j, &dc) in den.iter().enumerate() {
            r[k + j] -= c * dc;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

impl Cyclotomic {
    /// Reduce a group-ring element `sum c_k zeta^k`, `k < m`.
    fn from_group_ring(phi: &[i128], ring: &[i128]) -> Self {
        let mut r = ring.to_vec();
        let deg = phi.len() - 1;
        for k in (deg..r.len()).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            // phi is monic
            for (j, &pc) in phi.iter().enumerate() {
                r[k - deg + j] -= c * pc;
            }
        }
        r.truncate(deg);
        Self { coeffs: r }
    }

    fn is_integer(&self, n: i128) -> bool {
        self.coeffs.first().copied().unwrap_or(0) == n && self.coeffs.iter().skip(1).all(|&c| c == 0)
    }
}

/// Coefficients `c_k` with `S = sum_k c_k zeta_{2N}^k`, and `N`.
fn gauss_sum_counts(d: &DiscriminantForm) -> (Vec<i128>, usize) {
    let n = d.scale().max(1);
    let f = d.finite(n);
    let mut counts = vec![0i128; 2 * n as usize];
    for x in f.elements() {
        counts[f.q(&x) as usize] += 1;
    }
    (counts, n as usize)
}

fn group_ring_mul(m: usize, a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[(i + j) % m] += x * y;
            }
        }
    }
    out
}

/// Gauss sum in the group ring of `Z/m`, `m = lcm(2N, 8)`.
fn gauss_sum_ring(d: &DiscriminantForm) -> (Vec<i128>, usize) {
    let (counts, n) = gauss_sum_counts(d);
    let m = (2 * n).lcm(&8);
    let step = m / (2 * n);
    let mut ring = vec![0i128; m];
    for (k, c) in counts.into_iter().enumerate() {
        ring[k * step] += c;
    }
    (ring, m)
}

/// `|S|^2 == |A|`, checked exactly.
pub fn gauss_sum_magnitude_ok(d: &DiscriminantForm) -> bool {
    let (ring, m) = gauss_sum_ring(d);
    let phi = cyclotomic_poly(m);
    let conj: Vec<i128> = (0..m).map(|k| ring[(m - k) % m]).collect();
    let prod = Cyclotomic::from_group_ring(&phi, &group_ring_mul(m, &ring, &conj));
    prod.is_integer(d.order() as i128)
}

/// The residue `sigma mod 8` with `S = sqrt|A| * exp(2 pi i sigma / 8)`.
///
/// The exact computation pins `sigma` up to adding 4; the remaining sign is
/// read off a floating evaluation of `S`, whose modulus is at least 1.
pub fn milgram_signature(d: &DiscriminantForm) -> Result<u8, LatticeError> {
    let (ring, m) = gauss_sum_ring(d);
    let phi = cyclotomic_poly(m);
    let order = d.order() as i128;
    let conj: Vec<i128> = (0..m).map(|k| ring[(m - k) % m]).collect();
    if !Cyclotomic::from_group_ring(&phi, &group_ring_mul(m, &ring, &conj)).is_integer(order) {
        return Err(LatticeError::GaussSum);
    }
    let eighth = m / 8;
    let sq = group_ring_mul(m, &ring, &ring);
    for sigma in 0..4usize {
        // S^2 * zeta_8^{-2 sigma} == |A|
        let mut rotated = vec![0i128; m];
        for (k, &c) in sq.iter().enumerate() {
            rotated[(k + m - (2 * sigma * eighth) % m) % m] += c;
        }
        if !Cyclotomic::from_group_ring(&phi, &rotated).is_integer(order) {
            continue;
        }
        // S * zeta_8^{-sigma} = +-sqrt|A|
        let re: f64 = ring
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                let angle = 2.0 * std::f64::consts::PI * (k as f64 - (sigma * eighth) as f64) / m as f64;
                c as f64 * angle.cos()
            })
            .sum();
        return Ok(if re > 0.0 { sigma as u8 } else { sigma as u8 + 4 });
    }
    Err(LatticeError::GaussSum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, IntMatrix, Rational};
    use crate::lattice::{ambient, lattice_discriminant_form, root_lattice, Component, Lattice};

    fn cyclic(order: u64, q: Rational) -> DiscriminantForm {
        DiscriminantForm {
            orders: vec![order],
            generators: vec![vec![Rational::from_integer(0.into())]],
            pairing: vec![vec![q]],
        }
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
    }

    #[test]
    fn small_forms() {
        let trivial = DiscriminantForm {
            orders: vec![],
            generators: vec![],
            pairing: vec![],
        };
        assert_eq!(milgram_signature(&trivial).unwrap(), 0);
        assert_eq!(milgram_signature(&cyclic(2, rat(1, 2))).unwrap(), 1);
        assert_eq!(milgram_signature(&cyclic(2, rat(-1, 2))).unwrap(), 7);
    }

    #[test]
    fn matches_signature_of_lattices() {
        for c in ["A1", "A2", "A7", "D5", "D6", "E6", "E7"] {
            let l = root_lattice(c.parse::<Component>().unwrap()).unwrap();
            let d = lattice_discriminant_form(&l).unwrap();
            assert!(gauss_sum_magnitude_ok(&d));
            let expect = (8 - (l.rank() % 8)) % 8;
            assert_eq!(milgram_signature(&d).unwrap() as usize, expect, "{c}");
        }
        let n = ambient(&"E6+A11+2A1".parse().unwrap()).unwrap();
        let d = lattice_discriminant_form(&n).unwrap();
        assert_eq!(milgram_signature(&d).unwrap(), ((1i64 - 19).rem_euclid(8)) as u8);
        let u = Lattice::new(IntMatrix::from_i64(&[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!(milgram_signature(&lattice_discriminant_form(&u).unwrap()).unwrap(), 2);
    }

    #[test]
    fn odd_form_has_zero_sum() {
        // b = 0 on Z/2 with q = 1: degenerate, Gauss sum 1 + (-1) = 0
        assert!(!gauss_sum_magnitude_ok(&cyclic(2, rat(1, 1))));
        assert!(milgram_signature(&cyclic(2, rat(1, 1))).is_err());
    }
}
