use std::sync::{Mutex, OnceLock};

use rug::{Integer, Rational};

/// B_2, B_4, …, B_{2n} as exact rationals, cached and grown on demand.
///
/// Uses the integer tangent-number recurrence:
/// B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1)).
pub fn even_bernoulli(n: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().expect("bernoulli cache poisoned");
    if guard.len() < n {
        // grow geometrically so repeated small requests stay cheap
        let target = n.max(2 * guard.len()).max(32);
        *guard = compute(target);
    }
    guard[..n].to_vec()
}

fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u32 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j as u32 - k as u32));
            let b = Integer::from(&t[j] * (j as u32 - k as u32 + 2));
            t[j] = a + b;
        }
    }
    t
}

fn compute(n: usize) -> Vec<Rational> {
    let t = tangent_numbers(n);
    (1..=n)
        .map(|k| {
            let four_k = Integer::from(1) << (2 * k as u32);
            let den = Integer::from(&four_k * (Integer::from(&four_k - 1u32)));
            let num = Integer::from(&t[k] * (2 * k as u32));
            let b = Rational::from((num, den));
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}
