//! Independent reference implementations used to cross-check relation
//! composition. None of these touch the quantale traits.

use thiserror::Error;

use crate::quantale::ZInf;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("shape mismatch: {0}")]
pub struct ShapeMismatch(String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolMode {
    /// `(x,z)` related iff some `y` has `R(x,y)` and `S(y,z)`.
    Exists,
    /// `(x,z)` related iff every `y` has `R(x,y)` or `S(y,z)`.
    Forall,
}

fn inner_dim<T>(r: &[Vec<T>], s: &[Vec<T>]) -> Result<(usize, usize, usize), ShapeMismatch> {
    let n = r.len();
    let m = s.len();
    let p = s.first().map_or(0, Vec::len);
    if let Some(row) = r.iter().find(|row| row.len() != m) {
        return Err(ShapeMismatch(format!("left row has {} columns, right has {m} rows", row.len())));
    }
    if s.iter().any(|row| row.len() != p) {
        return Err(ShapeMismatch("ragged right matrix".into()));
    }
    Ok((n, m, p))
}

/// Relational composition by direct logic. The inner set may be empty.
pub fn oracle_bool_rel_compose(
    r: &[Vec<bool>],
    s: &[Vec<bool>],
    mode: BoolMode,
    cols: usize,
) -> Result<Vec<Vec<bool>>, ShapeMismatch> {
    let (n, m, p) = inner_dim(r, s)?;
    let p = if m == 0 { cols } else { p };
    Ok((0..n)
        .map(|x| {
            (0..p)
                .map(|z| match mode {
                    BoolMode::Exists => (0..m).any(|y| r[x][y] && s[y][z]),
                    BoolMode::Forall => (0..m).all(|y| r[x][y] || s[y][z]),
                })
                .collect()
        })
        .collect())
}

fn to_float(v: ZInf) -> f64 {
    match v {
        ZInf::NegInf => f64::NEG_INFINITY,
        ZInf::PosInf => f64::INFINITY,
        ZInf::Fin(x) => x as f64,
    }
}

fn from_float(v: f64) -> ZInf {
    if v == f64::NEG_INFINITY {
        ZInf::NegInf
    } else if v == f64::INFINITY {
        ZInf::PosInf
    } else {
        ZInf::Fin(v as i64)
    }
}

fn product(
    f: &[Vec<ZInf>],
    g: &[Vec<ZInf>],
    cols: usize,
    absorbing: f64,
    empty: f64,
    pick: fn(f64, f64) -> f64,
) -> Result<Vec<Vec<ZInf>>, ShapeMismatch> {
    let (n, m, p) = inner_dim(f, g)?;
    let p = if m == 0 { cols } else { p };
    Ok((0..n)
        .map(|x| {
            (0..p)
                .map(|z| {
                    let best = (0..m).fold(empty, |acc, y| {
                        let (a, b) = (to_float(f[x][y]), to_float(g[y][z]));
                        let sum = if a == absorbing || b == absorbing { absorbing } else { a + b };
                        pick(acc, sum)
                    });
                    from_float(best)
                })
                .collect()
        })
        .collect())
}

/// Max-plus product with `-inf` absorbing. `cols` is only used when the
/// inner dimension is zero.
pub fn oracle_maxplus(
    f: &[Vec<ZInf>],
    g: &[Vec<ZInf>],
    cols: usize,
) -> Result<Vec<Vec<ZInf>>, ShapeMismatch> {
    product(f, g, cols, f64::NEG_INFINITY, f64::NEG_INFINITY, f64::max)
}

/// Min-plus product with `+inf` absorbing.
pub fn oracle_minplus(
    f: &[Vec<ZInf>],
    g: &[Vec<ZInf>],
    cols: usize,
) -> Result<Vec<Vec<ZInf>>, ShapeMismatch> {
    product(f, g, cols, f64::INFINITY, f64::INFINITY, f64::min)
}
