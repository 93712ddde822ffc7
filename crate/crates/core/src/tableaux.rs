//! Partitions, Z-partitions, standard tableaux and Littlewood-Richardson
//! coefficients.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest size for which standard tableaux are enumerated.
pub const TABLEAU_CAP: usize = 10;

/// A partition, stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not non-increasing")));
        }
        Ok(Self::trimmed(parts.to_vec()))
    }

    fn trimmed(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The rectangle `(k^r)`.
    pub fn rectangle(k: usize, r: usize) -> Self {
        Self::trimmed(vec![k; r])
    }

    /// Parse `"[3,1,1]"`; brackets are optional.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = parse_int_list(s)?
            .into_iter()
            .map(|x| {
                usize::try_from(x)
                    .map_err(|_| Error::Parse(format!("negative part {x} in partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `lambda_i` for 1-based `i`, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of non-zero parts, `l(lambda)`.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (1..=width)
                .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
                .collect(),
        }
    }

    /// Hook length of the cell in row `i`, column `j` (1-based).
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.part(i) - j;
        let leg = self.conjugate().part(j) - i;
        arm + leg + 1
    }

    /// Number of standard tableaux, by the hook-length formula.
    pub fn hook_dimension(&self) -> u128 {
        let n = self.size() as u128;
        let num: u128 = (1..=n).product();
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 1..=p {
                hooks *= ((p - j) + (conj.part(j) - (i + 1)) + 1) as u128;
            }
        }
        num / hooks
    }

    /// All partitions of `n` in reverse lexicographic order (`(n)` first).
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Pad to `r` parts as a Z-partition.
    pub fn to_zpartition(&self, r: usize) -> Result<ZPartition> {
        if self.length() > r {
            return Err(Error::LengthExceedsRank {
                length: self.length(),
                rank: r,
            });
        }
        let mut parts: Vec<i64> = self.parts.iter().map(|&p| p as i64).collect();
        parts.resize(r, 0);
        Ok(ZPartition { parts })
    }

    /// Contains `other` as a diagram.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length()
            && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in {s:?}")))
        })
        .collect()
}

/// A non-increasing sequence of `r` integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZPartition {
    parts: Vec<i64>,
}

impl ZPartition {
    pub fn new(parts: &[i64]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not non-increasing")));
        }
        Ok(ZPartition {
            parts: parts.to_vec(),
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(&parse_int_list(s)?)
    }

    /// Parse and pad with zeros to length `r`; refuses longer inputs.
    pub fn parse_with_rank(s: &str, r: usize) -> Result<Self> {
        let z = Self::parse(s)?;
        z.padded(r)
    }

    /// Pad with trailing zeros to length `r`. Fails if that breaks
    /// monotonicity or if there are more than `r` entries.
    pub fn padded(&self, r: usize) -> Result<Self> {
        if self.parts.len() > r {
            let extra_zero = self.parts[r..].iter().all(|&x| x == 0);
            if !extra_zero {
                return Err(Error::LengthExceedsRank {
                    length: self.parts.len(),
                    rank: r,
                });
            }
            return Self::new(&self.parts[..r]);
        }
        let mut parts = self.parts.clone();
        parts.resize(r, 0);
        Self::new(&parts)
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Add `k` to every part (tensoring with the `k`-th determinant power).
    pub fn shift(&self, k: i64) -> Self {
        ZPartition {
            parts: self.parts.iter().map(|&x| x + k).collect(),
        }
    }

    /// `(partition, s)` with `self = partition + (s^r)`, `s = lambda_r`.
    pub fn normalize(&self) -> (Partition, i64) {
        let s = self.parts.last().copied().unwrap_or(0);
        let parts: Vec<usize> = self.parts.iter().map(|&x| (x - s) as usize).collect();
        (Partition::trimmed(parts), s)
    }

    /// The partition itself when all parts are non-negative.
    pub fn as_partition(&self) -> Option<Partition> {
        if self.parts.iter().any(|&x| x < 0) {
            return None;
        }
        Some(Partition::trimmed(
            self.parts.iter().map(|&x| x as usize).collect(),
        ))
    }

    /// `-lambda = (-lambda_r, ..., -lambda_1)`.
    pub fn dual(&self) -> Self {
        ZPartition {
            parts: self.parts.iter().rev().map(|&x| -x).collect(),
        }
    }
}

impl fmt::Display for ZPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for ZPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn dual(lambda: &ZPartition) -> ZPartition {
    lambda.dual()
}

/// A standard tableau, stored as the (row, column) cell of each entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    cells: Vec<(usize, usize)>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// 1-based `(row, column)` of entry `m`.
    pub fn position(&self, m: usize) -> Result<(usize, usize)> {
        if m == 0 || m > self.cells.len() {
            return Err(Error::IndexOutOfRange {
                index: m as i64,
                bound: self.cells.len(),
            });
        }
        Ok(self.cells[m - 1])
    }

    /// Content `column - row` of the cell holding `m`.
    pub fn content(&self, m: usize) -> Result<i64> {
        let (j, k) = self.position(m)?;
        Ok(k as i64 - j as i64)
    }

    /// Rows of entries.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = self.shape.parts.iter().map(|&p| vec![0; p]).collect();
        for (m, &(j, k)) in self.cells.iter().enumerate() {
            rows[j - 1][k - 1] = m + 1;
        }
        rows
    }

    /// Row reading word: rows top to bottom, each left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows().concat()
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

pub fn content(t: &StandardTableau, m: usize) -> Result<i64> {
    t.content(m)
}

/// All standard tableaux of `shape`, ordered lexicographically by row
/// reading word; index 0 is the row-filled tableau.
pub fn standard_tableaux(shape: &Partition) -> Result<Arc<Vec<StandardTableau>>> {
    if shape.size() > TABLEAU_CAP {
        return Err(Error::CapExceeded {
            what: "partition size",
            value: shape.size(),
            cap: TABLEAU_CAP,
        });
    }
    static CACHE: OnceLock<Mutex<HashMap<Partition, Arc<Vec<StandardTableau>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(shape) {
        return Ok(hit.clone());
    }
    let list = Arc::new(enumerate_tableaux(shape));
    cache
        .lock()
        .unwrap()
        .insert(shape.clone(), list.clone());
    Ok(list)
}

fn enumerate_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    fn rec(
        shape: &Partition,
        filled: &mut Vec<usize>,
        cells: &mut Vec<(usize, usize)>,
        out: &mut Vec<StandardTableau>,
    ) {
        if cells.len() == shape.size() {
            out.push(StandardTableau {
                shape: shape.clone(),
                cells: cells.clone(),
            });
            return;
        }
        for row in 0..shape.length() {
            let col = filled[row];
            let fits = col < shape.parts[row] && (row == 0 || filled[row - 1] > col);
            if fits {
                filled[row] += 1;
                cells.push((row + 1, col + 1));
                rec(shape, filled, cells, out);
                cells.pop();
                filled[row] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(shape, &mut vec![0; shape.length()], &mut Vec::new(), &mut out);
    out.sort_by_key(StandardTableau::reading_word);
    out
}

/// Littlewood-Richardson coefficient `c^gamma_{lambda mu}`, by counting
/// semistandard fillings of `gamma / lambda` with content `mu` whose reverse
/// row reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, gamma: &Partition) -> Result<u64> {
    if gamma.size() != lambda.size() + mu.size() {
        return Err(Error::SizeMismatch {
            gamma: gamma.size(),
            sum: lambda.size() + mu.size(),
        });
    }
    if !gamma.contains(lambda) || !gamma.contains(mu) {
        return Ok(0);
    }
    // Cells of the skew shape in reverse reading order: rows top to bottom,
    // each right to left.
    let mut cells = Vec::new();
    for (i, &g) in gamma.parts.iter().enumerate() {
        for j in (lambda.part(i + 1)..g).rev() {
            cells.push((i, j));
        }
    }
    let mut fill: Vec<Vec<usize>> = gamma.parts.iter().map(|&g| vec![0; g]).collect();
    let mut counts = vec![0usize; mu.length() + 1];
    Ok(lr_fill(lambda, mu, &cells, 0, &mut fill, &mut counts))
}

fn lr_fill(
    lambda: &Partition,
    mu: &Partition,
    cells: &[(usize, usize)],
    idx: usize,
    fill: &mut Vec<Vec<usize>>,
    counts: &mut Vec<usize>,
) -> u64 {
    if idx == cells.len() {
        return 1;
    }
    let (i, j) = cells[idx];
    // Weakly increasing along the row: bounded by the entry to the right.
    let max_row = if j + 1 < fill[i].len() {
        fill[i][j + 1]
    } else {
        mu.length()
    };
    // Strictly increasing down the column: above entry (if in the skew part).
    let min_col = if i > 0 && j >= lambda.part(i) {
        fill[i - 1][j] + 1
    } else {
        1
    };
    let mut total = 0;
    for v in min_col..=max_row.min(mu.length()) {
        if counts[v] >= mu.part(v) {
            continue;
        }
        if v > 1 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        counts[v] += 1;
        fill[i][j] = v;
        total += lr_fill(lambda, mu, cells, idx + 1, fill, counts);
        fill[i][j] = 0;
        counts[v] -= 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn tableau_counts() {
        assert_eq!(standard_tableaux(&p("[4]")).unwrap().len(), 1);
        assert_eq!(standard_tableaux(&p("[2,1]")).unwrap().len(), 2);
        assert_eq!(standard_tableaux(&p("[2,2]")).unwrap().len(), 2);
        for n in 0..=7 {
            for lam in Partition::all_of_size(n) {
                assert_eq!(
                    standard_tableaux(&lam).unwrap().len() as u128,
                    lam.hook_dimension()
                );
            }
        }
    }

    #[test]
    fn content_examples() {
        let t = &standard_tableaux(&p("[2]")).unwrap()[0];
        assert_eq!(t.content(2).unwrap(), 1);
        let t = &standard_tableaux(&p("[1,1]")).unwrap()[0];
        assert_eq!(t.content(2).unwrap(), -1);
        let t = &standard_tableaux(&p("[2,1]")).unwrap()[0];
        assert_eq!(t.rows(), vec![vec![1, 2], vec![3]]);
        assert_eq!(t.content(3).unwrap(), -1);
        assert!(t.content(4).is_err());
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p("[1]"), &p("[1]"), &p("[2]")).unwrap(), 1);
        assert_eq!(lr_coefficient(&p("[1]"), &p("[1]"), &p("[1,1]")).unwrap(), 1);
        assert_eq!(
            lr_coefficient(&p("[2,1]"), &p("[2,1]"), &p("[3,2,1]")).unwrap(),
            2
        );
        assert!(matches!(
            lr_coefficient(&p("[1]"), &p("[1]"), &p("[3]")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn zpartition_helpers() {
        let z = ZPartition::parse("[2,0,-1]").unwrap();
        assert_eq!(z.normalize(), (p("[3,1]"), -1));
        assert_eq!(ZPartition::parse("[1,0]").unwrap().dual().to_string(), "[0,-1]");
        assert_eq!(
            ZPartition::parse("[2,1,0]").unwrap().dual().to_string(),
            "[0,-1,-2]"
        );
        assert!(ZPartition::parse("[0,1]").is_err());
    }
}
