//! Permutations in one-line notation, lengths, reduced words and the coset
//! decomposition used by the conditional trace.
//!
//! Composition convention: `u.mul(w)` is the permutation `i -> w(u(i))`, i.e.
//! `u` is applied first. With this convention right multiplication by the
//! simple transposition `v_i = (i, i+1)` swaps the *values* `i` and `i+1` in
//! the one-line notation, and left multiplication swaps the *positions*.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest degree for which lookup tables over the whole group are built.
pub const MAX_TABLE_DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    /// Build from one-line notation (values `1..=n`).
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::Invalid(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n + 1];
        for &x in images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Parse(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Parse `"3 2 1"` (commas and brackets are tolerated).
    pub fn parse(s: &str) -> Result<Self> {
        let images = s
            .split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(&images)
    }

    /// The simple transposition `v_i = (i, i+1)` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                bound: n.saturating_sub(1),
            });
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// The transposition `(a, b)`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.images.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = (i + 1) as u8;
        }
        Permutation { images }
    }

    /// Group product `self * other` (apply `self` first).
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize - 1])
                .collect(),
        }
    }

    /// `self * v_i`: swap the values `i` and `i+1`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        for x in images.iter_mut() {
            if *x as usize == i {
                *x += 1;
            } else if *x as usize == i + 1 {
                *x -= 1;
            }
        }
        Permutation { images }
    }

    /// `v_i * self`: swap the positions `i` and `i+1`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// True when `length(self * v_i) > length(self)`.
    pub fn right_ascent(&self, i: usize) -> bool {
        let pos = |v: usize| self.images.iter().position(|&x| x as usize == v).unwrap();
        pos(i) < pos(i + 1)
    }

    /// True when `length(v_i * self) > length(self)`.
    pub fn left_ascent(&self, i: usize) -> bool {
        self.images[i - 1] < self.images[i]
    }

    /// A reduced word `[i_1, ..., i_l]` with `self = v_{i_1} v_{i_2} ... v_{i_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        // Strip right descents until the identity is reached.
        'outer: loop {
            for i in 1..w.degree() {
                if !w.right_ascent(i) {
                    w = w.mul_simple_right(i);
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    /// The same permutation regarded in `S_{n+1}` (fixing `n+1`).
    pub fn embed(&self) -> Self {
        let mut images = self.images.clone();
        images.push(images.len() as u8 + 1);
        Permutation { images }
    }

    /// Restriction to `S_{n-1}` when the permutation fixes `n`.
    pub fn restrict(&self) -> Option<Self> {
        let n = self.degree();
        if n == 0 || self.images[n - 1] as usize != n {
            return None;
        }
        Some(Permutation {
            images: self.images[..n - 1].to_vec(),
        })
    }

    /// Position of this permutation in the lexicographic order of `S_n`.
    pub fn lex_rank(&self) -> usize {
        let n = self.images.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller_after = self.images[i + 1..]
                .iter()
                .filter(|&&x| x < self.images[i])
                .count();
            rank = rank * (n - i) + smaller_after;
        }
        rank
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

pub fn length(w: &Permutation) -> usize {
    w.length()
}

/// The order-reversing permutation `w_n`.
pub fn longest_element(n: usize) -> Permutation {
    Permutation {
        images: (1..=n as u8).rev().collect(),
    }
}

/// The unique `(k, w1)` with `w = v_k v_{k+1} ... v_{n-1} w1`, `w1` fixing `n`
/// and `length(w) = (n - k) + length(w1)`. `w1` is returned in `S_{n-1}`.
///
/// `k` is the position of `n` in the one-line notation; `w1` is `w` with that
/// entry moved to the end.
pub fn coset_decompose(w: &Permutation) -> (usize, Permutation) {
    let n = w.degree();
    let k = w.images.iter().position(|&x| x as usize == n).unwrap() + 1;
    let mut images = w.images.clone();
    images.remove(k - 1);
    (k, Permutation { images })
}

/// All of `S_n` in lexicographic order.
pub fn enumerate(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// Lookup tables over `S_n`, indexed by lexicographic rank.
pub struct GroupTable {
    pub n: usize,
    pub perms: Vec<Permutation>,
    pub lengths: Vec<u16>,
    pub inverse: Vec<u32>,
    /// `right[i-1][w] = index of w * v_i`.
    pub right: Vec<Vec<u32>>,
    /// `left[i-1][w] = index of v_i * w`.
    pub left: Vec<Vec<u32>>,
    /// Reduced word of each element.
    pub words: Vec<Vec<u8>>,
    /// For a non-identity element, `(parent, i)` with `w = parent * v_i` and
    /// `length(parent) = length(w) - 1`; parents precede children in `bfs`.
    pub parent: Vec<Option<(u32, u8)>>,
    /// Inverse of `parent`: `children[w]` lists `(w * v_i, i)`.
    pub children: Vec<Vec<(u32, u8)>>,
    /// Elements ordered by length.
    pub bfs: Vec<u32>,
}

impl GroupTable {
    fn build(n: usize) -> Self {
        let perms = enumerate(n);
        let size = perms.len();
        let lengths: Vec<u16> = perms.iter().map(|p| p.length() as u16).collect();
        let inverse = perms.iter().map(|p| p.inverse().lex_rank() as u32).collect();
        let gens = n.saturating_sub(1);
        let mut right = vec![vec![0u32; size]; gens];
        let mut left = vec![vec![0u32; size]; gens];
        for (idx, p) in perms.iter().enumerate() {
            for i in 1..=gens {
                right[i - 1][idx] = p.mul_simple_right(i).lex_rank() as u32;
                left[i - 1][idx] = p.mul_simple_left(i).lex_rank() as u32;
            }
        }
        let mut parent = vec![None; size];
        let mut bfs: Vec<u32> = (0..size as u32).collect();
        bfs.sort_by_key(|&w| (lengths[w as usize], w));
        for &w in &bfs {
            let w = w as usize;
            for i in 1..=gens {
                let p = right[i - 1][w] as usize;
                if lengths[p] < lengths[w] {
                    parent[w] = Some((p as u32, i as u8));
                    break;
                }
            }
        }
        let mut children = vec![Vec::new(); size];
        for (w, p) in parent.iter().enumerate() {
            if let Some((p, i)) = p {
                children[*p as usize].push((w as u32, *i));
            }
        }
        let mut words = vec![Vec::new(); size];
        for &w in &bfs {
            if let Some((p, i)) = parent[w as usize] {
                let mut word = words[p as usize].clone();
                word.push(i);
                words[w as usize] = word;
            }
        }
        GroupTable {
            n,
            perms,
            lengths,
            inverse,
            right,
            left,
            words,
            parent,
            children,
            bfs,
        }
    }

    pub fn size(&self) -> usize {
        self.perms.len()
    }

    pub fn index_of(&self, w: &Permutation) -> usize {
        w.lex_rank()
    }
}

/// Tables for `S_n`, built once per degree.
pub fn table(n: usize) -> Result<&'static GroupTable> {
    static TABLES: [OnceLock<GroupTable>; MAX_TABLE_DEGREE + 1] =
        [const { OnceLock::new() }; MAX_TABLE_DEGREE + 1];
    if n > MAX_TABLE_DEGREE {
        return Err(Error::CapExceeded {
            what: "degree",
            value: n,
            cap: MAX_TABLE_DEGREE,
        });
    }
    Ok(TABLES[n].get_or_init(|| GroupTable::build(n)))
}
