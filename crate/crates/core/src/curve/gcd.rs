//! Greatest common divisors in `K[x, y]`, viewed as `K[x][y]`, by the
//! primitive pseudo-remainder sequence.

use super::poly::{LocalPoly, UPoly};

type Biv = Vec<UPoly>;

fn trim(mut f: Biv) -> Biv {
    while f.last().is_some_and(UPoly::is_zero) {
        f.pop();
    }
    f
}

fn content(f: &Biv) -> UPoly {
    f.iter().fold(UPoly::zero(), |acc, c| acc.gcd(c))
}

fn exact_div(f: &Biv, c: &UPoly) -> Biv {
    f.iter()
        .map(|a| {
            let (q, r) = a.divrem(c).expect("nonzero content");
            debug_assert!(r.is_zero());
            q
        })
        .collect()
}

fn primitive(f: &Biv) -> Biv {
    let c = content(f);
    if c.is_zero() {
        return f.clone();
    }
    exact_div(f, &c)
}

/// Pseudo-remainder of `a` by `b` in `y`.
fn prem(a: &Biv, b: &Biv) -> Biv {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Biv = r.iter().map(|c| c.mul(lb)).collect();
        for (j, bc) in b.iter().enumerate() {
            next[j + shift] = next[j + shift].sub(&bc.mul(&lr));
        }
        r = trim(next);
    }
    r
}

/// A greatest common divisor of `f` and `g` (up to a constant factor).
/// Returns `f` when `g` is zero and vice versa.
pub fn gcd(f: &LocalPoly, g: &LocalPoly) -> LocalPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let (a, b) = (trim(f.by_y_powers()), trim(g.by_y_powers()));
    let c = content(&a).gcd(&content(&b));
    let (mut a, mut b) = (primitive(&a), primitive(&b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 {
            // primitive and free of y: a nonzero constant
            return LocalPoly::from_y_powers(&[c]);
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            let out: Biv = b.iter().map(|x| x.mul(&c)).collect();
            return LocalPoly::from_y_powers(&out);
        }
        a = b;
        b = primitive(&r);
    }
}

/// `f` and `g` have a common factor of positive degree.
pub fn have_common_factor(f: &LocalPoly, g: &LocalPoly) -> bool {
    gcd(f, g).total_degree().is_some_and(|d| d > 0)
}
