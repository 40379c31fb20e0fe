#![allow(dead_code)]

use std::collections::HashMap;

use acoalign::ScoringScheme;

/// Best score over every alignment of `x` and `y`, found by walking all of
/// them without memoisation.
pub fn brute_force_optimum(x: &[u8], y: &[u8], s: &ScoringScheme) -> i32 {
    fn walk(x: &[u8], y: &[u8], s: &ScoringScheme, acc: i32, best: &mut i32) {
        if x.is_empty() && y.is_empty() {
            *best = (*best).max(acc);
            return;
        }
        if !x.is_empty() && !y.is_empty() {
            walk(&x[1..], &y[1..], s, acc + s.pair(x[0], y[0]), best);
        }
        if !x.is_empty() {
            walk(&x[1..], y, s, acc + s.gap_penalty(), best);
        }
        if !y.is_empty() {
            walk(x, &y[1..], s, acc + s.gap_penalty(), best);
        }
    }
    let mut best = i32::MIN;
    walk(x, y, s, 0, &mut best);
    best
}

/// Optimal global score by top-down recursion over suffixes with a memo
/// table; shares no code with the library's forward DP.
pub fn memo_optimum(x: &[u8], y: &[u8], s: &ScoringScheme) -> i32 {
    fn go(
        i: usize,
        j: usize,
        x: &[u8],
        y: &[u8],
        s: &ScoringScheme,
        memo: &mut HashMap<(usize, usize), i32>,
    ) -> i32 {
        if let Some(&v) = memo.get(&(i, j)) {
            return v;
        }
        let v = if i == x.len() {
            (y.len() - j) as i32 * s.gap_penalty()
        } else if j == y.len() {
            (x.len() - i) as i32 * s.gap_penalty()
        } else {
            let d = s.pair(x[i], y[j]) + go(i + 1, j + 1, x, y, s, memo);
            let a = s.gap_penalty() + go(i + 1, j, x, y, s, memo);
            let b = s.gap_penalty() + go(i, j + 1, x, y, s, memo);
            d.max(a).max(b)
        };
        memo.insert((i, j), v);
        v
    }
    go(0, 0, x, y, s, &mut HashMap::new())
}
