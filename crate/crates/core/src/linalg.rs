//! Exact linear algebra over GF(2^n).

use crate::gf2e::{FieldCtx, FieldElem};

pub type Mat = Vec<Vec<FieldElem>>;
pub type Mat3 = [FieldElem; 9];

/// Row-reduces in place and returns the pivot columns.
pub fn row_reduce(f: &FieldCtx, m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c];
                for j in 0..cols {
                    let t = f.mul(factor, m[r][j]);
                    m[i][j] = f.add(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &FieldCtx, m: &Mat) -> usize {
    let mut work = m.clone();
    row_reduce(f, &mut work).len()
}

/// Basis of the right kernel {v : m v = 0}.
pub fn kernel(f: &FieldCtx, m: &Mat) -> Vec<Vec<FieldElem>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut work = m.clone();
    let pivots = row_reduce(f, &mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![FieldElem::ZERO; cols];
            v[fc] = FieldElem::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = work[row][fc];
            }
            v
        })
        .collect()
}

pub fn mat_mul(f: &FieldCtx, a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(FieldElem::ZERO, |acc, k| f.add(acc, f.mul(row[k], b[k][j])))
                })
                .collect()
        })
        .collect()
}

/// Entrywise a -> a^(2^k).
pub fn frobenius_twist(f: &FieldCtx, m: &Mat, k: u32) -> Mat {
    m.iter()
        .map(|row| row.iter().map(|&a| f.frob(a, k)).collect())
        .collect()
}

pub fn mat3_mul(f: &FieldCtx, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [FieldElem::ZERO; 9];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0u32;
            for k in 0..3 {
                acc ^= f.mul(a[3 * i + k], b[3 * k + j]).0;
            }
            out[3 * i + j] = FieldElem(acc);
        }
    }
    out
}

pub fn mat3_apply(f: &FieldCtx, m: &Mat3, v: &[FieldElem; 3]) -> [FieldElem; 3] {
    let mut out = [FieldElem::ZERO; 3];
    for i in 0..3 {
        out[i] = FieldElem(
            f.mul(m[3 * i], v[0]).0 ^ f.mul(m[3 * i + 1], v[1]).0 ^ f.mul(m[3 * i + 2], v[2]).0,
        );
    }
    out
}

fn minor(f: &FieldCtx, m: &Mat3, r0: usize, r1: usize, c0: usize, c1: usize) -> FieldElem {
    f.add(
        f.mul(m[3 * r0 + c0], m[3 * r1 + c1]),
        f.mul(m[3 * r0 + c1], m[3 * r1 + c0]),
    )
}

pub fn det3(f: &FieldCtx, m: &Mat3) -> FieldElem {
    let a = f.mul(m[0], minor(f, m, 1, 2, 1, 2));
    let b = f.mul(m[1], minor(f, m, 1, 2, 0, 2));
    let c = f.mul(m[2], minor(f, m, 1, 2, 0, 1));
    FieldElem(a.0 ^ b.0 ^ c.0)
}

/// Adjugate; in characteristic 2 cofactor signs vanish. m * adj(m) = det(m) I.
pub fn adj3(f: &FieldCtx, m: &Mat3) -> Mat3 {
    let others = |i: usize| match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut out = [FieldElem::ZERO; 9];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = others(j);
            let (c0, c1) = others(i);
            out[3 * i + j] = minor(f, m, r0, r1, c0, c1);
        }
    }
    out
}

pub fn cross(f: &FieldCtx, a: &[FieldElem; 3], b: &[FieldElem; 3]) -> [FieldElem; 3] {
    [
        f.add(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.add(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.add(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

pub fn dot(f: &FieldCtx, a: &[FieldElem; 3], b: &[FieldElem; 3]) -> FieldElem {
    FieldElem(f.mul(a[0], b[0]).0 ^ f.mul(a[1], b[1]).0 ^ f.mul(a[2], b[2]).0)
}
