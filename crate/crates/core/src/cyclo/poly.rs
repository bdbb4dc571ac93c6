//! Integer polynomial helpers: Euler's totient and cached cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub fn euler_phi(n: u32) -> usize {
    let mut m = n as u64;
    let mut r = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            r = r / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        r = r / m * (m - 1);
    }
    r as usize
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u32, b: u32) -> u32 {
    let g = gcd(a as u64, b as u64);
    let l = a as u64 / g * b as u64;
    u32::try_from(l).expect("conductor lcm overflows u32")
}

/// Units of Z/n in increasing order (`[1]` for n <= 2).
pub fn units(n: u32) -> Vec<u32> {
    if n <= 2 {
        return vec![1];
    }
    (1..n).filter(|&u| gcd(u as u64, n as u64) == 1).collect()
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first. Monic of degree phi(n).
pub fn cyclotomic(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d a proper divisor of n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic(d);
            num = exact_div_monic(&num, &div);
        }
    }
    let arc = Arc::new(num);
    cache().lock().unwrap().insert(n, arc.clone());
    arc
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(2), vec![1, 1]);
        assert_eq!(*cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(*cyclotomic(5), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn phi_matches_degree() {
        for n in 1..200u32 {
            assert_eq!(cyclotomic(n).len() - 1, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn units_list() {
        assert_eq!(units(1), vec![1]);
        assert_eq!(units(2), vec![1]);
        assert_eq!(units(12), vec![1, 5, 7, 11]);
    }
}
