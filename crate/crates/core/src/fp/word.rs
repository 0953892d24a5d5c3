//! Words in a free group: sequences of signed, 1-based generator indices.

pub type Word = Vec<i32>;

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        debug_assert!(x != 0, "generator index 0 is not a letter");
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn concat(parts: &[&[i32]]) -> Word {
    let mut out = Vec::new();
    for p in parts {
        out.extend_from_slice(p);
    }
    free_reduce(&out)
}

pub fn power(w: &[i32], n: i64) -> Word {
    let base = if n < 0 { inverse(w) } else { w.to_vec() };
    let mut out = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
    for _ in 0..n.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    free_reduce(&out)
}

/// `[x, y] = x y x^-1 y^-1`.
pub fn commutator(x: &[i32], y: &[i32]) -> Word {
    concat(&[x, y, &inverse(x), &inverse(y)])
}

/// Freely and cyclically reduced form.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn exponent_sums(w: &[i32], generator_count: usize) -> Vec<i64> {
    let mut sums = vec![0i64; generator_count];
    for &x in w {
        let i = x.unsigned_abs() as usize - 1;
        sums[i] += x.signum() as i64;
    }
    sums
}
