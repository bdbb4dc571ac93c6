//! Partitions, cycle types and symmetric group characters.

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// All partitions of `n`, each nonincreasing, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn conjugate(lambda: &[usize]) -> Vec<usize> {
    let first = lambda.first().copied().unwrap_or(0);
    (1..=first).map(|j| lambda.iter().filter(|&&p| p >= j).count()).collect()
}

/// Degree by the hook length formula.
pub fn hook_degree(lambda: &[usize]) -> u128 {
    let n: usize = lambda.iter().sum();
    let conj = conjugate(lambda);
    let mut hooks: u128 = 1;
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            hooks *= (row - j + conj[j] - i - 1) as u128;
        }
    }
    (1..=n as u128).product::<u128>() / hooks
}

/// Cycle type of a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn fixed_points(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }

    /// Number of fixed points minus one.
    pub fn alpha(&self) -> i64 {
        self.fixed_points() as i64 - 1
    }

    pub fn cycles(&self) -> usize {
        self.parts.len()
    }

    pub fn is_identity(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// Cycle type of the k-th power.
    pub fn power(&self, k: usize) -> CycleType {
        let mut out = Vec::new();
        for &l in &self.parts {
            let g = l.gcd(&k);
            out.extend(std::iter::repeat_n(l / g, g));
        }
        CycleType::new(out)
    }
}

/// `chi^lambda(mu)` by removing rim hooks, one cycle of `mu` at a time.
///
/// Partitions are handled as beta sets: removing a rim hook of length `r`
/// moves one bead from `b` to the empty position `b - r`, with sign
/// `(-1)^(beads strictly between)`.
pub fn murnaghan_nakayama(lambda: &[usize], mu: &CycleType) -> i64 {
    let n: usize = lambda.iter().sum();
    assert_eq!(n, mu.n(), "partition sizes differ");
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut memo = HashMap::new();
    mn_rec(beta, mu.parts(), &mut memo)
}

fn mn_rec(beta: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.clone(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(next, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// The five small partitions with closed-form characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallPartition {
    /// `(n-2, 1, 1)`
    TwoOneOne,
    /// `(n-2, 2)`
    TwoTwo,
    /// `(n-3, 1, 1, 1)`
    ThreeOnes,
    /// `(n-3, 2, 1)`
    ThreeTwoOne,
    /// `(n-3, 3)`
    ThreeThree,
}

impl SmallPartition {
    pub const ALL: [SmallPartition; 5] = [
        SmallPartition::TwoOneOne,
        SmallPartition::TwoTwo,
        SmallPartition::ThreeOnes,
        SmallPartition::ThreeTwoOne,
        SmallPartition::ThreeThree,
    ];

    pub fn partition(self, n: usize) -> Vec<usize> {
        match self {
            SmallPartition::TwoOneOne => vec![n - 2, 1, 1],
            SmallPartition::TwoTwo => vec![n - 2, 2],
            SmallPartition::ThreeOnes => vec![n - 3, 1, 1, 1],
            SmallPartition::ThreeTwoOne => vec![n - 3, 2, 1],
            SmallPartition::ThreeThree => vec![n - 3, 3],
        }
    }

    /// Character value from the fixed-point counts of `g`, `g^2`, `g^3`.
    pub fn closed_form(self, g: &CycleType) -> i64 {
        let a = g.alpha();
        let a2 = g.power(2).alpha();
        let a3 = g.power(3).alpha();
        match self {
            SmallPartition::TwoOneOne => (a * a - a2) / 2,
            SmallPartition::TwoTwo => (a * a + a2) / 2 - a - 1,
            SmallPartition::ThreeOnes => (a * a * a - 3 * a * a2 + 2 * a3) / 6,
            SmallPartition::ThreeTwoOne => (a * a * a - a3) / 3 - a * a + 1,
            SmallPartition::ThreeThree => (a * a * a + 3 * a * a2 + 2 * a3) / 6 - a * a - a,
        }
    }

    /// The same formulas before integer division, so a non-integral value
    /// is caught instead of truncated.
    pub fn closed_form_exact(self, g: &CycleType) -> Option<i64> {
        let a = g.alpha();
        let a2 = g.power(2).alpha();
        let a3 = g.power(3).alpha();
        let (num, den, add) = match self {
            SmallPartition::TwoOneOne => (a * a - a2, 2, 0),
            SmallPartition::TwoTwo => (a * a + a2, 2, -a - 1),
            SmallPartition::ThreeOnes => (a * a * a - 3 * a * a2 + 2 * a3, 6, 0),
            SmallPartition::ThreeTwoOne => (a * a * a - a3, 3, -a * a + 1),
            SmallPartition::ThreeThree => (a * a * a + 3 * a * a2 + 2 * a3, 6, -a * a - a),
        };
        (num % den == 0).then(|| num / den + add)
    }
}
