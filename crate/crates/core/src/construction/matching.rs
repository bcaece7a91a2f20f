//! Perfect matchings in square bipartite graphs.
//!
//! The graph is given as an `m × m` boolean support grid: row `i` may be
//! matched to column `j` iff `support[i][j]`. Results are permutations stored
//! as assignment vectors, `sigma[i] = j`.

/// Returns the lexicographically smallest perfect matching, or `None` when
/// the support has no perfect matching.
///
/// Rows are fixed in ascending order and each row takes the smallest column
/// that still leaves a perfect matching for the rows after it. A first
/// matching is found with Kuhn's augmenting-path search; each later row
/// improvement is a single augmenting search that rotates the matching along
/// an alternating cycle.
pub fn perfect_matching(support: &[Vec<bool>]) -> Option<Vec<usize>> {
    let m = support.len();
    if support.iter().any(|row| row.len() != m) {
        return None;
    }
    let mut matching = Matching::new(m);
    for row in 0..m {
        let mut seen = vec![false; m];
        if !matching.augment(support, row, &mut seen, &vec![false; m]) {
            return None;
        }
    }

    let mut locked_rows = vec![false; m];
    for row in 0..m {
        let current = matching.col_of[row];
        for col in (0..current).filter(|&c| support[row][c]) {
            // Column `col` is held by an unlocked row `other`; give `col` to
            // `row`, free `current`, and look for a new column for `other`.
            let other = matching.row_of[col].expect("perfect matching covers every column");
            if locked_rows[other] {
                continue;
            }
            let snapshot = matching.clone();
            matching.row_of[current] = None;
            matching.col_of[row] = col;
            matching.row_of[col] = Some(row);
            let mut seen = vec![false; m];
            seen[col] = true;
            for (c, &r) in matching.col_of.iter().zip(&locked_rows) {
                if r {
                    seen[*c] = true;
                }
            }
            locked_rows[row] = true;
            let ok = matching.augment(support, other, &mut seen, &locked_rows);
            locked_rows[row] = false;
            if ok {
                break;
            }
            matching = snapshot;
        }
        locked_rows[row] = true;
    }
    Some(matching.col_of)
}

#[derive(Clone)]
struct Matching {
    col_of: Vec<usize>,
    row_of: Vec<Option<usize>>,
}

impl Matching {
    fn new(m: usize) -> Self {
        Matching { col_of: vec![usize::MAX; m], row_of: vec![None; m] }
    }

    /// Kuhn's depth-first augmenting search from `row`, scanning columns in
    /// ascending order. Columns marked in `seen` are never entered and rows
    /// marked in `locked` are never displaced.
    fn augment(&mut self, support: &[Vec<bool>], row: usize, seen: &mut [bool], locked: &[bool]) -> bool {
        for col in 0..support.len() {
            if !support[row][col] || seen[col] {
                continue;
            }
            seen[col] = true;
            let free = match self.row_of[col] {
                None => true,
                Some(holder) => !locked[holder] && self.augment(support, holder, seen, locked),
            };
            if free {
                self.row_of[col] = Some(row);
                self.col_of[row] = col;
                return true;
            }
        }
        false
    }
}
