use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{FormalSum, Word};

/// The shuffle product: every interleaving of `u` and `v` that keeps the
/// internal letter order of both, counted with multiplicity.
pub fn shuffle(u: &Word, v: &Word) -> Result<FormalSum> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut out = FormalSum::zero();
    let mut buf = Vec::with_capacity(u.len() + v.len());
    interleave(u.letters(), v.letters(), &mut buf, &mut out)?;
    Ok(out)
}

fn interleave(u: &[usize], v: &[usize], buf: &mut Vec<usize>, out: &mut FormalSum) -> Result<()> {
    if u.is_empty() || v.is_empty() {
        let mut w = buf.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        return out.add_term(Word::new(w), 1);
    }
    buf.push(u[0]);
    interleave(&u[1..], v, buf, out)?;
    buf.pop();
    buf.push(v[0]);
    interleave(u, &v[1..], buf, out)?;
    buf.pop();
    Ok(())
}

/// The infiltration product: interleavings of `u` and `v` in which equal
/// letters taken one from each side may also be merged. It governs products
/// of coefficients of the `x -> 1 + x` expansion; the shuffle is its part of
/// top length.
/// Unlike the shuffle it is inhomogeneous, so it is returned as a plain map.
pub fn infiltration(u: &Word, v: &Word) -> Result<BTreeMap<Word, i64>> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut out = BTreeMap::new();
    let mut buf = Vec::with_capacity(u.len() + v.len());
    merge(u.letters(), v.letters(), &mut buf, &mut out);
    Ok(out)
}

fn merge(u: &[usize], v: &[usize], buf: &mut Vec<usize>, out: &mut BTreeMap<Word, i64>) {
    if u.is_empty() || v.is_empty() {
        let mut w = buf.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        *out.entry(Word::new(w)).or_insert(0) += 1;
        return;
    }
    buf.push(u[0]);
    merge(&u[1..], v, buf, out);
    buf.pop();
    buf.push(v[0]);
    merge(u, &v[1..], buf, out);
    if u[0] == v[0] {
        merge(&u[1..], &v[1..], buf, out);
    }
    buf.pop();
}
