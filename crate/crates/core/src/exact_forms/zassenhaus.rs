//! Irreducible factorization of squarefree primitive integer polynomials:
//! factor modulo a good prime, Hensel-lift to a modulus above the
//! coefficient bound, then recombine lifted factors by trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, FpPoly};
use super::upoly::QPoly;

/// Integer polynomial, low degree first.
type ZPoly = Vec<BigInt>;

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421,
    431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541, 547,
    557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653, 659,
    661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751, 757, 761, 769, 773, 787, 797,
    809, 811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911, 919, 929,
    937, 941, 947, 953, 967, 971, 977, 983, 991, 997,
];

/// How many admissible primes to try before settling on the one with the
/// fewest modular factors.
const PRIME_CANDIDATES: usize = 4;

fn degree(f: &[BigInt]) -> usize {
    f.len() - 1
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn modulo(c: &BigInt, m: &BigInt) -> BigInt {
    c.mod_floor(m)
}

fn reduce_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    a.iter().map(|c| modulo(c, m)).collect()
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = modulo(c, m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn lift_fp(a: &FpPoly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn to_fp(a: &[BigInt], fp: &Fp) -> FpPoly {
    fp.reduce(a)
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive(a: &[BigInt]) -> ZPoly {
    let g = content(a);
    let sign = if a.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let g = g * sign;
    a.iter().map(|c| c / &g).collect()
}

/// Bound on coefficients of any factor of `f` scaled by `lc(f)`:
/// `|lc| * 2^n * ||f||_2`, rounded up.
fn factor_coefficient_bound(f: &[BigInt]) -> BigInt {
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + 1;
    let lc = f.last().unwrap().abs();
    lc * (BigInt::one() << degree(f)) * norm
}

/// Lifts `f ≡ g * h (mod p)` with `g`, `h` monic and `f` monic modulo `p^k`.
fn hensel_pair(f: &[BigInt], g: &FpPoly, h: &FpPoly, fp: &Fp, k: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(fp.p);
    let (s, t) = fp.bezout(g, h);
    let mut big_g = lift_fp(g);
    let mut big_h = lift_fp(h);
    let mut modulus = p.clone();
    for _ in 1..k {
        let next = &modulus * &p;
        let prod = zmul(&big_g, &big_h);
        let diff: ZPoly = (0..f.len())
            .map(|i| {
                let fi = f.get(i).cloned().unwrap_or_default();
                let pi = prod.get(i).cloned().unwrap_or_default();
                modulo(&(fi - pi), &next)
            })
            .collect();
        let e: ZPoly = diff.iter().map(|c| c / &modulus).collect();
        let e_p = to_fp(&e, fp);
        let delta_g = fp.rem(&fp.mul(&t, &e_p), g);
        let delta_h = fp.rem(&fp.mul(&s, &e_p), h);
        for (i, c) in delta_g.iter().enumerate() {
            big_g[i] += &modulus * c;
        }
        for (i, c) in delta_h.iter().enumerate() {
            big_h[i] += &modulus * c;
        }
        modulus = next;
    }
    (big_g, big_h)
}

/// Lifts a complete monic factorization of `f mod p` to `p^k`.
fn hensel_multi(f: &[BigInt], factors: &[FpPoly], fp: &Fp, k: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let g = &factors[0];
    let h = factors[1..].iter().fold(vec![1u64], |acc, q| fp.mul(&acc, q));
    let (big_g, big_h) = hensel_pair(f, g, &h, fp, k);
    let mut out = vec![big_g];
    out.extend(hensel_multi(&big_h, &factors[1..], fp, k));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let ext = a.extended_gcd(m);
    debug_assert!(ext.gcd.is_one());
    modulo(&ext.x, m)
}

fn divides(candidate: &[BigInt], f: &[BigInt]) -> Option<ZPoly> {
    let q = QPoly::from_ints(f).div_exact(&QPoly::from_ints(candidate))?;
    if q.coeffs().iter().all(|c| c.is_integer()) {
        Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

fn choose_prime(f: &[BigInt]) -> (Fp, Vec<FpPoly>) {
    let lc = f.last().unwrap();
    let mut best: Option<(Fp, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for &p in PRIMES {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        let fbar = to_fp(f, &fp);
        if fbar.len() != f.len() || !fp.is_squarefree(&fbar) {
            continue;
        }
        let parts = fp.factor_squarefree(&fp.monic(&fbar), &mut rng);
        let better = best.as_ref().is_none_or(|(_, b)| parts.len() < b.len());
        if better {
            best = Some((fp, parts));
        }
        tried += 1;
        if tried >= PRIME_CANDIDATES || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("no admissible prime below 1000 for a squarefree polynomial of degree <= 12")
}

/// Irreducible factors over the integers of a squarefree primitive
/// polynomial of positive degree. Each factor is primitive with positive
/// leading coefficient; the output is sorted.
pub(crate) fn factor_squarefree_primitive(f: &[BigInt]) -> Vec<ZPoly> {
    let n = degree(f);
    if n <= 1 {
        return vec![primitive(f)];
    }
    let (fp, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![primitive(f)];
    }
    let bound = factor_coefficient_bound(f) * 2;
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus *= &p;
        k += 1;
    }
    let lc = f.last().unwrap().clone();
    let lc_inv = mod_inverse(&lc, &modulus);
    let monic_f: ZPoly = f.iter().map(|c| modulo(&(c * &lc_inv), &modulus)).collect();
    let mut lifted = hensel_multi(&monic_f, &modular, &fp, k);
    for g in lifted.iter_mut() {
        *g = reduce_mod(g, &modulus);
    }

    let mut remaining = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        for subset in subsets(lifted.len(), size) {
            let current_lc = remaining.last().unwrap().clone();
            let prod = subset.iter().fold(vec![current_lc.clone()], |acc, &i| {
                reduce_mod(&zmul(&acc, &lifted[i]), &modulus)
            });
            let candidate: ZPoly = prod.iter().map(|c| symmetric(c, &modulus)).collect();
            let candidate = primitive(&candidate);
            if let Some(quotient) = divides(&candidate, &remaining) {
                found.push(candidate);
                remaining = quotient;
                let mut idx = 0;
                lifted.retain(|_| {
                    let keep = !subset.contains(&idx);
                    idx += 1;
                    keep
                });
                continue 'outer;
            }
        }
        size += 1;
    }
    found.push(primitive(&remaining));
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn as_i64(f: &[BigInt]) -> Vec<i64> {
        f.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn splits_product_of_quadratics() {
        // (t^2 + 1)(t^2 - 2): irreducible over Q, but splits mod many primes.
        let f = zmul(&z(&[1, 0, 1]), &z(&[-2, 0, 1]));
        let parts = factor_squarefree_primitive(&f);
        let got: Vec<Vec<i64>> = parts.iter().map(|p| as_i64(p)).collect();
        assert_eq!(got, vec![vec![-2, 0, 1], vec![1, 0, 1]]);
    }

    #[test]
    fn swinnerton_dyer_quartic_is_irreducible() {
        // t^4 - 10 t^2 + 1 splits into quadratics or linears mod every prime.
        let parts = factor_squarefree_primitive(&z(&[1, 0, -10, 0, 1]));
        assert_eq!(parts.len(), 1);
    }

    #[test]
    fn non_monic_linear_factors() {
        // (2t + 3)(3t - 1)(5t + 7)
        let f = zmul(&zmul(&z(&[3, 2]), &z(&[-1, 3])), &z(&[7, 5]));
        let parts = factor_squarefree_primitive(&f);
        let got: Vec<Vec<i64>> = parts.iter().map(|p| as_i64(p)).collect();
        assert_eq!(got, vec![vec![-1, 3], vec![3, 2], vec![7, 5]]);
    }

    #[test]
    fn cyclotomic_twelve() {
        // t^12 - 1 = Φ1 Φ2 Φ3 Φ4 Φ6 Φ12
        let mut f = vec![BigInt::zero(); 13];
        f[0] = BigInt::from(-1);
        f[12] = BigInt::one();
        let parts = factor_squarefree_primitive(&f);
        let degrees: Vec<usize> = parts.iter().map(|p| p.len() - 1).collect();
        assert_eq!(degrees, vec![1, 1, 2, 2, 2, 4]);
    }
}
