//! Extended Euclidean algorithm with an early stop on the remainder degree.

use crate::field::Field;
use crate::poly::Poly;

/// One row of the remainder sequence, with `s·p + t·p′ = r`.
#[derive(Clone, PartialEq, Debug)]
pub struct EeaRow<F> {
    pub r: Poly<F>,
    pub s: Poly<F>,
    pub t: Poly<F>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct EeaTrace<F> {
    /// Rows `0..=stop`, plus row `stop + 1` when `r_stop ≠ 0`.
    pub rows: Vec<EeaRow<F>>,
    /// `quotients[i − 1]` is `q_i = r_{i−1} div r_i`.
    pub quotients: Vec<Poly<F>>,
    pub stop: usize,
}

impl<F: Field> EeaTrace<F> {
    pub fn stop_row(&self) -> &EeaRow<F> {
        &self.rows[self.stop]
    }

    pub fn next_row(&self) -> Option<&EeaRow<F>> {
        self.rows.get(self.stop + 1)
    }
}

fn below<F: Field>(r: &Poly<F>, dstop: Option<usize>) -> bool {
    match (r.degree(), dstop) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(d), Some(s)) => d <= s,
    }
}

/// Runs `r_{i+1} = r_{i−1} − q_i·r_i` from `(r₀, r₁) = (p, p′)` and stops at
/// the first `l` with `deg r_l ≤ dstop` (`None` is `−∞`, giving the full
/// gcd sequence).
pub fn eea_with_stop<F: Field>(p: &Poly<F>, pprime: &Poly<F>, dstop: Option<usize>) -> EeaTrace<F> {
    let mut rows = vec![
        EeaRow {
            r: p.clone(),
            s: Poly::one(),
            t: Poly::zero(),
        },
        EeaRow {
            r: pprime.clone(),
            s: Poly::zero(),
            t: Poly::one(),
        },
    ];
    let mut quotients = Vec::new();

    let stop = if below(p, dstop) {
        0
    } else {
        let mut i = 1;
        while !below(&rows[i].r, dstop) {
            let (q, r) = rows[i - 1].r.divrem(&rows[i].r).expect("r_i is nonzero");
            let next = step(&rows[i - 1], &rows[i], &q, r);
            quotients.push(q);
            rows.push(next);
            i += 1;
        }
        i
    };

    if stop + 1 == rows.len() && !rows[stop].r.is_zero() {
        let (q, r) = rows[stop - 1].r.divrem(&rows[stop].r).expect("r_l is nonzero");
        let next = step(&rows[stop - 1], &rows[stop], &q, r);
        quotients.push(q);
        rows.push(next);
    }
    rows.truncate(if rows[stop].r.is_zero() { stop + 1 } else { stop + 2 });
    EeaTrace {
        rows,
        quotients,
        stop,
    }
}

fn step<F: Field>(prev: &EeaRow<F>, cur: &EeaRow<F>, q: &Poly<F>, r: Poly<F>) -> EeaRow<F> {
    EeaRow {
        r,
        s: &prev.s - &(q * &cur.s),
        t: &prev.t - &(q * &cur.t),
    }
}
