//! Test-side oracles. Nothing here calls into the arithmetic it checks.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frac(pub i128, pub i128);

impl Frac {
    pub fn new(n: i128, d: i128) -> Self {
        assert!(d != 0);
        let g = gcd(n, d).max(1);
        let s = if d < 0 { -1 } else { 1 };
        Frac(s * n / g, s * d / g)
    }
    pub fn int(n: i128) -> Self {
        Frac(n, 1)
    }
    pub fn add(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1)
    }
    pub fn sub(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1 - o.0 * self.1, self.1 * o.1)
    }
    pub fn mul(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.0, self.1 * o.1)
    }
    pub fn div(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1, self.1 * o.0)
    }
    pub fn le(self, o: Frac) -> bool {
        self.0 * o.1 <= o.0 * self.1
    }
    /// Smallest multiple of 1/n that is at least self.
    pub fn ceil_grid(self, n: i128) -> Frac {
        let num = self.0 * n;
        let q = num.div_euclid(self.1) + if num.rem_euclid(self.1) == 0 { 0 } else { 1 };
        Frac::new(q, n)
    }
    pub fn text(self) -> String {
        if self.1 == 1 { self.0.to_string() } else { format!("{}/{}", self.0, self.1) }
    }
}

pub fn std_coeff(m: i128) -> Frac {
    Frac::new(m - 1, m)
}

// ---- curves ----

/// Some `N ≤ 60` and some point raised to 1 with the others rounded up to the
/// `1/N` grid gives total at most 2 (an empty divisor gets one new point).
pub fn has_toric_complement(coeffs: &[Frac]) -> bool {
    if coeffs.is_empty() {
        return true;
    }
    (1..=60).any(|n| {
        (0..coeffs.len()).any(|i| {
            let total = coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j == i { Frac::int(1) } else { c.ceil_grid(n) })
                .fold(Frac::int(0), Frac::add);
            total.le(Frac::int(2))
        })
    })
}

/// All multisets of standard coefficients `1 - 1/m`, `2 ≤ m ≤ max_den`, and 1,
/// with total at most 2.
pub fn standard_multisets(max_den: i128) -> Vec<Vec<Frac>> {
    let mut values: Vec<Frac> = (2..=max_den).map(std_coeff).collect();
    values.push(Frac::int(1));
    let mut out = Vec::new();
    fn go(values: &[Frac], from: usize, cur: &mut Vec<Frac>, sum: Frac, out: &mut Vec<Vec<Frac>>) {
        out.push(cur.clone());
        for i in from..values.len() {
            let s = sum.add(values[i]);
            if !s.le(Frac::int(2)) {
                continue;
            }
            cur.push(values[i]);
            go(values, i, cur, s, out);
            cur.pop();
        }
    }
    go(&values, 0, &mut Vec::new(), Frac::int(0), &mut out);
    out
}

/// Orbifold indices of the pairs that are neither elliptic (total exactly 2,
/// no coefficient 1) nor toric.
pub fn sporadic_oracle(max_den: i128) -> BTreeSet<Vec<i128>> {
    standard_multisets(max_den)
        .into_iter()
        .filter(|cs| {
            let total = cs.iter().copied().fold(Frac::int(0), Frac::add);
            let has_one = cs.contains(&Frac::int(1));
            let elliptic = total == Frac::int(2) && !has_one;
            !elliptic && !has_toric_complement(cs)
        })
        .map(|cs| {
            let mut idx: Vec<i128> = cs.iter().map(|c| c.1).collect();
            idx.sort();
            idx
        })
        .collect()
}

// ---- permutations ----

pub type Perm = Vec<usize>;

/// `(p q)(i) = q(p(i))`: apply `p` first.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    p.iter().map(|&i| q[i]).collect()
}

pub fn invert(p: &[usize]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Perm {
    let mut p: Perm = (0..n).collect();
    for c in cycles {
        for i in 0..c.len() {
            p[c[i] - 1] = c[(i + 1) % c.len()] - 1;
        }
    }
    p
}

/// Every element of `⟨gens⟩`, by breadth-first closure.
pub fn closure(n: usize, gens: &[Perm]) -> HashSet<Perm> {
    let id: Perm = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = compose(&g, s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

pub fn perm_commutator(a: &[usize], b: &[usize]) -> Perm {
    compose(&compose(&compose(a, b), &invert(a)), &invert(b))
}

/// Derived subgroup as the normal closure of generator commutators. Returns
/// the elements and a generating set.
pub fn derived_by_closure(n: usize, gens: &[Perm]) -> (HashSet<Perm>, Vec<Perm>) {
    let mut sub: Vec<Perm> = Vec::new();
    for a in gens {
        for b in gens {
            sub.push(perm_commutator(a, b));
        }
    }
    let mut elems = closure(n, &sub);
    loop {
        let mut fresh = None;
        'scan: for g in gens {
            for h in &sub {
                let c = compose(&compose(&invert(g), h), g);
                if !elems.contains(&c) {
                    fresh = Some(c);
                    break 'scan;
                }
            }
        }
        match fresh {
            Some(c) => {
                sub.push(c);
                elems = closure(n, &sub);
            }
            None => return (elems, sub),
        }
    }
}

// ---- integer matrices ----

pub type Mat = Vec<Vec<i128>>;

/// Fraction-free (Bareiss) determinant.
pub fn det(m: &Mat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Gcd of all `k × k` minors.
pub fn determinantal_divisor(m: &Mat, k: usize) -> i128 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = 0;
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Mat = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
            g = gcd(g, det(&sub));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

/// `(torsion invariant factors > 1, free rank)` of `ℤ^cols / rowspace`.
pub fn abelian_invariants(m: &Mat, cols: usize) -> (Vec<i128>, usize) {
    let rows: Mat = m.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut d = vec![1i128];
    let mut rank = 0;
    for k in 1..=cols.min(rows.len()) {
        let dk = determinantal_divisor(&rows, k);
        if dk == 0 {
            break;
        }
        d.push(dk);
        rank = k;
    }
    let torsion = (1..=rank).map(|k| d[k] / d[k - 1]).filter(|&x| x > 1).collect();
    (torsion, cols - rank)
}

// ---- unitriangular model of H_k ----

pub type M3 = [[i128; 3]; 3];

pub fn m3_mul(a: &M3, b: &M3) -> M3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|t| a[i][t] * b[t][j]).sum();
        }
    }
    c
}

pub fn m3_inv(a: &M3) -> M3 {
    // Unitriangular: I - N + N^2.
    let n = [[0, a[0][1], a[0][2]], [0, 0, a[1][2]], [0, 0, 0]];
    let n2 = m3_mul(&n, &n);
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = if i == j { 1 } else { 0 } - n[i][j] + n2[i][j];
        }
    }
    out
}

pub fn m3_pow(a: &M3, e: i128) -> M3 {
    let base = if e < 0 { m3_inv(a) } else { *a };
    let mut acc = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..e.abs() {
        acc = m3_mul(&acc, &base);
    }
    acc
}

/// `a ↦ I + k e12`, `b ↦ I + e23`, `c ↦ I + e13`, so `[a,b] = c^k`.
pub fn heis_gen(k: i128, letter: i32) -> M3 {
    let g = match letter.abs() {
        1 => [[1, k, 0], [0, 1, 0], [0, 0, 1]],
        2 => [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
        3 => [[1, 0, 1], [0, 1, 0], [0, 0, 1]],
        _ => panic!("bad letter"),
    };
    if letter < 0 { m3_inv(&g) } else { g }
}

pub fn heis_word(k: i128, w: &[i32]) -> M3 {
    w.iter().fold([[1, 0, 0], [0, 1, 0], [0, 0, 1]], |acc, &l| m3_mul(&acc, &heis_gen(k, l)))
}

/// Matrix of `a^x b^y c^z`.
pub fn heis_normal(k: i128, x: i128, y: i128, z: i128) -> M3 {
    m3_mul(&m3_mul(&m3_pow(&heis_gen(k, 1), x), &m3_pow(&heis_gen(k, 2), y)), &m3_pow(&heis_gen(k, 3), z))
}

pub fn m3_comm(a: &M3, b: &M3) -> M3 {
    m3_mul(&m3_mul(&m3_mul(a, b), &m3_inv(a)), &m3_inv(b))
}

// ---- lattices ----

/// All index-`d` sublattices of `ℤ²` as Hermite bases `[[d1,0],[e,d2]]`.
pub fn sublattices(d: i128) -> Vec<[[i128; 2]; 2]> {
    let mut out = Vec::new();
    for d1 in 1..=d {
        if d % d1 == 0 {
            for e in 0..d1 {
                out.push([[d1, 0], [e, d / d1]]);
            }
        }
    }
    out
}

/// Least index of a sublattice `L` with `[u, v] = c^{k det L}` trivial mod `m`,
/// i.e. the least `d` with `m | k d`.
pub fn min_abelian_index_oracle(m: i128, k: i128) -> i128 {
    (1..)
        .find(|&d| sublattices(d).iter().any(|b| {
            let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
            (k * det) % m == 0
        }))
        .unwrap()
}

pub fn ceil_sqrt_ratio_oracle(m: i128, k: i128) -> i128 {
    (0..).find(|&l| l * l * k.abs() >= m).unwrap()
}

// ---- toric ----

pub fn det2(v: (i64, i64), w: (i64, i64)) -> i128 {
    v.0 as i128 * w.1 as i128 - v.1 as i128 * w.0 as i128
}

/// `D_i² = -det(v_{i-1}, v_{i+1}) / (det(v_{i-1}, v_i) det(v_i, v_{i+1}))`.
pub fn self_intersection_oracle(rays: &[(i64, i64)], i: usize) -> Frac {
    let r = rays.len();
    let (p, v, n) = (rays[(i + r - 1) % r], rays[i], rays[(i + 1) % r]);
    Frac::new(-det2(p, n), det2(p, v) * det2(v, n))
}

/// `n/q = b1 - 1/(b2 - ...)` by the Euclidean-style recursion on fractions.
pub fn hj_oracle(n: i128, q: i128) -> Vec<i128> {
    let mut x = Frac::new(n, q);
    let mut out = Vec::new();
    loop {
        let b = x.0.div_euclid(x.1) + if x.0.rem_euclid(x.1) == 0 { 0 } else { 1 };
        out.push(b);
        let rest = Frac::int(b).sub(x);
        if rest.0 == 0 {
            return out;
        }
        x = Frac::int(1).div(rest);
    }
}
