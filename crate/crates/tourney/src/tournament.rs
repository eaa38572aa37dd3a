//! Round-robin tournament representation, validation, generators,
//! enumeration and canonical forms.
//!
//! A tournament on `n` teams is a complete directed graph: for every pair
//! of distinct teams exactly one beats the other. Teams are indexed `0..n`
//! internally; all user-facing output (errors, files, JSON) is 1-based.

use std::fmt;
use std::str::FromStr;

use serde_json::json;
use thiserror::Error;

/// Hard cap on team count: adjacency rows are `u32` bitmasks.
pub const MAX_TEAMS: usize = 32;

/// Desk-scale soft caps, overridable through the `TF_MAX_N` environment
/// variable (documented as "at your own risk").
pub mod caps {
    /// Labeled exhaustive enumeration.
    pub const ENUMERATE_LABELED: usize = 6;
    /// Canonical (one per isomorphism class) enumeration.
    pub const ENUMERATE_CANONICAL: usize = 7;
    /// Canonical-form computation.
    pub const CANONICAL_FORM: usize = 10;

    /// Effective cap: the larger of the built-in cap and `TF_MAX_N`.
    pub fn effective(builtin: usize) -> usize {
        match std::env::var("TF_MAX_N") {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) => builtin.max(n.min(super::MAX_TEAMS)),
                Err(_) => builtin,
            },
            Err(_) => builtin,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TournamentError {
    #[error("team {} beats itself", .0 + 1)]
    ReflexiveEdge(usize),
    #[error("pair ({}, {}) is not decided exactly once", .0 + 1, .1 + 1)]
    IncompleteOrSymmetricPair(usize, usize),
    #[error("team count {n} outside supported range {min}..={max}")]
    SizeOutOfRange { n: usize, min: usize, max: usize },
    #[error("team index {} out of range for {n} teams", .index + 1)]
    IndexOutOfRange { index: usize, n: usize },
    #[error("malformed tournament file: {0}")]
    Parse(String),
}

/// A subset of team indices, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TeamSet(pub u32);

impl TeamSet {
    pub fn empty() -> Self {
        TeamSet(0)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_TEAMS);
        if n == 32 {
            TeamSet(u32::MAX)
        } else {
            TeamSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        TeamSet(1 << i)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: TeamSet) -> TeamSet {
        TeamSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: TeamSet) -> TeamSet {
        TeamSet(self.0 & other.0)
    }

    pub fn minus(&self, other: TeamSet) -> TeamSet {
        TeamSet(self.0 & !other.0)
    }

    pub fn is_subset_of(&self, other: TeamSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Members as 1-based indices, for file and CLI output.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl FromIterator<usize> for TeamSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = TeamSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for TeamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// A nonempty set of teams acting together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coalition(TeamSet);

impl Coalition {
    pub fn new(members: TeamSet, n: usize) -> Result<Self, TournamentError> {
        if members.is_empty() {
            return Err(TournamentError::Parse("coalition must be nonempty".into()));
        }
        if let Some(bad) = members.iter().find(|&i| i >= n) {
            return Err(TournamentError::IndexOutOfRange { index: bad, n });
        }
        Ok(Coalition(members))
    }

    pub fn from_members(members: &[usize], n: usize) -> Result<Self, TournamentError> {
        Coalition::new(members.iter().copied().collect(), n)
    }

    pub fn members(&self) -> TeamSet {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A complete round-robin result on `n` teams.
///
/// `rows[i]` has bit `j` set iff team `i` beat team `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    rows: Vec<u32>,
}

impl Tournament {
    /// Validates a raw beats-matrix: irreflexive and every pair decided
    /// exactly once.
    pub fn validate(n: usize, beats: &[Vec<bool>]) -> Result<Self, TournamentError> {
        if !(2..=MAX_TEAMS).contains(&n) {
            return Err(TournamentError::SizeOutOfRange { n, min: 2, max: MAX_TEAMS });
        }
        if beats.len() != n || beats.iter().any(|row| row.len() != n) {
            return Err(TournamentError::Parse(format!(
                "matrix dimensions do not match n = {n}"
            )));
        }
        for i in 0..n {
            if beats[i][i] {
                return Err(TournamentError::ReflexiveEdge(i));
            }
            for j in (i + 1)..n {
                if beats[i][j] == beats[j][i] {
                    return Err(TournamentError::IncompleteOrSymmetricPair(i, j));
                }
            }
        }
        let rows = beats
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &b)| if b { acc | 1 << j } else { acc })
            })
            .collect();
        Ok(Tournament { n, rows })
    }

    /// Builds from a list of directed edges `(winner, loser)` covering every
    /// pair exactly once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, TournamentError> {
        let mut beats = vec![vec![false; n]; n];
        for &(w, l) in edges {
            if w >= n || l >= n {
                return Err(TournamentError::IndexOutOfRange { index: w.max(l), n });
            }
            beats[w][l] = true;
        }
        Tournament::validate(n, &beats)
    }

    pub(crate) fn from_rows_unchecked(n: usize, rows: Vec<u32>) -> Self {
        debug_assert_eq!(rows.len(), n);
        Tournament { n, rows }
    }

    pub fn team_count(&self) -> usize {
        self.n
    }

    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// `{j : i beats j}`.
    pub fn out_neighborhood(&self, i: usize) -> Result<TeamSet, TournamentError> {
        if i >= self.n {
            return Err(TournamentError::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(TeamSet(self.rows[i]))
    }

    /// `{j : j beats i}`.
    pub fn in_neighborhood(&self, i: usize) -> Result<TeamSet, TournamentError> {
        if i >= self.n {
            return Err(TournamentError::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(TeamSet(self.in_mask(i)))
    }

    /// Out-neighborhood without the range check, for hot loops.
    pub(crate) fn out_mask(&self, i: usize) -> u32 {
        self.rows[i]
    }

    pub(crate) fn in_mask(&self, i: usize) -> u32 {
        TeamSet::full(self.n).0 & !self.rows[i] & !(1u32 << i)
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    /// Flips the result of the match between `i` and `j`.
    pub fn with_flipped(&self, i: usize, j: usize) -> Tournament {
        let mut t = self.clone();
        t.rows[i] ^= 1 << j;
        t.rows[j] ^= 1 << i;
        t
    }

    /// Subtournament induced by `teams`, reindexed in increasing order.
    pub fn induced(&self, teams: TeamSet) -> Tournament {
        let members: Vec<usize> = teams.iter().collect();
        let m = members.len();
        let mut rows = vec![0u32; m];
        for (a, &i) in members.iter().enumerate() {
            for (b, &j) in members.iter().enumerate() {
                if a != b && self.beats(i, j) {
                    rows[a] |= 1 << b;
                }
            }
        }
        Tournament { n: m, rows }
    }

    /// Applies a relabeling: team `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Tournament {
        let mut rows = vec![0u32; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.beats(i, j) {
                    rows[perm[i]] |= 1 << perm[j];
                }
            }
        }
        Tournament { n: self.n, rows }
    }

    // ------------------------------------------------------------------
    // Bit encoding (pairs in colex order) and canonical forms
    // ------------------------------------------------------------------

    /// Number of pairs, i.e. encoding bits.
    pub fn pair_count(n: usize) -> usize {
        n * (n - 1) / 2
    }

    /// Colex index of the pair `(i, j)` with `i < j`: pairs arrive grouped
    /// by their larger endpoint, so the first `m(m-1)/2` bits only involve
    /// teams `0..m`.
    fn pair_index(i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        j * (j - 1) / 2 + i
    }

    /// Encodes the tournament as a bit pattern: pair `(i, j)` (in colex
    /// order) is 1 iff `i` beats `j`, with the first pair in the most
    /// significant position so integer order agrees with pair-prefix order.
    /// Requires `n <= 11` so the pattern fits in a `u64`.
    pub fn encode(&self) -> u64 {
        assert!(self.n <= 11, "bit encoding requires n <= 11");
        let total = Self::pair_count(self.n);
        let mut code = 0u64;
        for j in 1..self.n {
            for i in 0..j {
                if self.beats(i, j) {
                    code |= 1 << (total - 1 - Self::pair_index(i, j));
                }
            }
        }
        code
    }

    /// Inverse of [`Tournament::encode`].
    pub fn decode(n: usize, code: u64) -> Tournament {
        assert!(n <= 11);
        let total = Self::pair_count(n);
        let mut rows = vec![0u32; n];
        for j in 1..n {
            for i in 0..j {
                if code >> (total - 1 - Self::pair_index(i, j)) & 1 == 1 {
                    rows[i] |= 1 << j;
                } else {
                    rows[j] |= 1 << i;
                }
            }
        }
        Tournament { n, rows }
    }

    /// Minimum of [`Tournament::encode`] over all relabelings, found by
    /// branch-and-bound over partial labelings with degree-guided ordering.
    fn min_encoding(&self) -> u64 {
        let mut best = self.encode();
        let mut perm = Vec::with_capacity(self.n);
        let mut used = 0u32;
        self.search_min(&mut perm, &mut used, 0, &mut best, false);
        best
    }

    /// Returns true iff no relabeling has a strictly smaller encoding than
    /// the identity labeling.
    fn is_min_encoding(&self) -> bool {
        let own = self.encode();
        let mut best = own;
        let mut perm = Vec::with_capacity(self.n);
        let mut used = 0u32;
        !self.search_min(&mut perm, &mut used, 0, &mut best, true)
    }

    /// Extends the partial labeling `perm` (positions filled so far) with
    /// every unused team; prunes branches whose bit prefix already exceeds
    /// `best`. Returns true as soon as an encoding `< best` is found when
    /// `abort_on_improve` is set.
    fn search_min(
        &self,
        perm: &mut Vec<usize>,
        used: &mut u32,
        prefix: u64,
        best: &mut u64,
        abort_on_improve: bool,
    ) -> bool {
        let pos = perm.len();
        if pos == self.n {
            if prefix < *best {
                *best = prefix;
                if abort_on_improve {
                    return true;
                }
            }
            return false;
        }
        // Candidates ordered by how many already-placed teams beat them, so
        // low encodings are tried first (degree-guided).
        let mut cands: Vec<(u32, usize)> = (0..self.n)
            .filter(|v| *used >> v & 1 == 0)
            .map(|v| {
                let beaten_by_placed =
                    perm.iter().filter(|&&p| self.beats(p, v)).count() as u32;
                (beaten_by_placed, v)
            })
            .collect();
        cands.sort_unstable();
        let total = Self::pair_count(self.n);
        for (_, v) in cands {
            // Placing v at `pos` decides the pairs (i, pos) for all i < pos,
            // completing the first C(pos+1, 2) bits of the encoding.
            let mut ext = prefix;
            for (i, &p) in perm.iter().enumerate() {
                if self.beats(p, v) {
                    ext |= 1 << (total - 1 - Self::pair_index(i, pos));
                }
            }
            let decided_bits = Self::pair_index(0, pos + 1);
            if decided_bits > 0 {
                let shift = total - decided_bits;
                if (ext >> shift) > (*best >> shift) {
                    continue;
                }
            }
            perm.push(v);
            *used |= 1 << v;
            let found = self.search_min(perm, used, ext, best, abort_on_improve);
            perm.pop();
            *used &= !(1 << v);
            if found {
                return true;
            }
        }
        false
    }

    /// Canonical key: equal keys iff the tournaments are isomorphic.
    ///
    /// The key is `n` followed by the big-endian bytes of the minimum
    /// encoding over all relabelings.
    pub fn canonical_form(&self) -> Result<Vec<u8>, TournamentError> {
        let cap = caps::effective(caps::CANONICAL_FORM).min(11);
        if self.n > cap {
            return Err(TournamentError::SizeOutOfRange { n: self.n, min: 2, max: cap });
        }
        let code = self.min_encoding();
        let mut key = Vec::with_capacity(9);
        key.push(self.n as u8);
        key.extend_from_slice(&code.to_be_bytes());
        Ok(key)
    }

    /// The canonical representative of this tournament's isomorphism class.
    pub fn canonical_representative(&self) -> Result<Tournament, TournamentError> {
        let cap = caps::effective(caps::CANONICAL_FORM).min(11);
        if self.n > cap {
            return Err(TournamentError::SizeOutOfRange { n: self.n, min: 2, max: cap });
        }
        Ok(Tournament::decode(self.n, self.min_encoding()))
    }

    // ------------------------------------------------------------------
    // Text formats
    // ------------------------------------------------------------------

    /// Renders the `.trn` text format: first line `n`, then one line per
    /// team with characters over `{0,1,-}`.
    pub fn to_trn(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.n.to_string());
        out.push('\n');
        for i in 0..self.n {
            for j in 0..self.n {
                out.push(if i == j {
                    '-'
                } else if self.beats(i, j) {
                    '1'
                } else {
                    '0'
                });
            }
            out.push('\n');
        }
        out
    }

    /// JSON export: `{"n": int, "beats": [[bool...]...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let beats: Vec<Vec<bool>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| i != j && self.beats(i, j)).collect())
            .collect();
        json!({ "n": self.n, "beats": beats })
    }
}

impl FromStr for Tournament {
    type Err = TournamentError;

    /// Parses the `.trn` format, enforcing both invariants bit-exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| TournamentError::Parse("empty file".into()))?
            .trim()
            .parse()
            .map_err(|e| TournamentError::Parse(format!("bad team count: {e}")))?;
        if !(2..=MAX_TEAMS).contains(&n) {
            return Err(TournamentError::SizeOutOfRange { n, min: 2, max: MAX_TEAMS });
        }
        let mut beats = vec![vec![false; n]; n];
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| TournamentError::Parse(format!("missing row {}", i + 1)))?
                .trim();
            if line.chars().count() != n {
                return Err(TournamentError::Parse(format!(
                    "row {} has {} characters, expected {}",
                    i + 1,
                    line.chars().count(),
                    n
                )));
            }
            for (j, c) in line.chars().enumerate() {
                match c {
                    '-' => {
                        if i != j {
                            return Err(TournamentError::IncompleteOrSymmetricPair(i, j));
                        }
                    }
                    '1' => {
                        if i == j {
                            return Err(TournamentError::ReflexiveEdge(i));
                        }
                        beats[i][j] = true;
                    }
                    '0' => {
                        if i == j {
                            // '0' on the diagonal is as malformed as '1'.
                            return Err(TournamentError::Parse(format!(
                                "row {} has '0' on the diagonal",
                                i + 1
                            )));
                        }
                    }
                    other => {
                        return Err(TournamentError::Parse(format!(
                            "row {} has invalid character '{other}'",
                            i + 1
                        )))
                    }
                }
            }
        }
        if lines.next().is_some() {
            return Err(TournamentError::Parse("trailing content after matrix".into()));
        }
        Tournament::validate(n, &beats)
    }
}

// ----------------------------------------------------------------------
// Generators
// ----------------------------------------------------------------------

/// The balanced tournament on `2k-1` teams: team `i` beats
/// `i+1, ..., i+k-1 (mod 2k-1)`.
pub fn gen_balanced(k: usize) -> Result<Tournament, TournamentError> {
    if k < 2 {
        return Err(TournamentError::SizeOutOfRange { n: k, min: 2, max: MAX_TEAMS });
    }
    let n = 2 * k - 1;
    if n > MAX_TEAMS {
        return Err(TournamentError::SizeOutOfRange { n, min: 3, max: MAX_TEAMS });
    }
    let mut rows = vec![0u32; n];
    for i in 0..n {
        for d in 1..k {
            rows[i] |= 1 << ((i + d) % n);
        }
    }
    Ok(Tournament { n, rows })
}

/// Kryptonite tournament: team 0 (the superman) beats every team except
/// team `n-1` (the kryptonite), which loses to everyone else. `inner`
/// fixes the matches among teams `1..n-1`; `None` defaults to
/// lower-index-wins.
pub fn gen_kryptonite(n: usize, inner: Option<&Tournament>) -> Result<Tournament, TournamentError> {
    if !(3..=MAX_TEAMS).contains(&n) {
        return Err(TournamentError::SizeOutOfRange { n, min: 3, max: MAX_TEAMS });
    }
    let m = n - 2;
    if let Some(t) = inner {
        if m >= 2 && t.team_count() != m {
            return Err(TournamentError::Parse(format!(
                "inner tournament must have {m} teams, got {}",
                t.team_count()
            )));
        }
    }
    let mut rows = vec![0u32; n];
    // Superman beats 1..n-1; kryptonite beats only the superman.
    for j in 1..n - 1 {
        rows[0] |= 1 << j;
    }
    rows[n - 1] |= 1;
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let a_wins = match inner {
                Some(t) => t.beats(a, b),
                None => a < b,
            };
            if a_wins {
                rows[a + 1] |= 1 << (b + 1);
            }
        }
        // Every inner team beats the kryptonite.
        rows[a + 1] |= 1 << (n - 1);
    }
    Ok(Tournament { n, rows })
}

/// The 8-team tournament in which H covers A yet A can still win a random
/// single-elimination bracket. Teams A..H are indices 0..7; matches not
/// pinned down by the construction default to lower-index-wins.
pub fn gen_rseb_cover_example() -> Tournament {
    let n = 8;
    let (a, b, c, d, e, f, g, h) = (0, 1, 2, 3, 4, 5, 6, 7);
    let mut beats = vec![vec![false; n]; n];
    let mut decided = vec![vec![false; n]; n];
    let mut set = |beats: &mut Vec<Vec<bool>>, decided: &mut Vec<Vec<bool>>, w: usize, l: usize| {
        beats[w][l] = true;
        decided[w][l] = true;
        decided[l][w] = true;
    };
    // A beats exactly {B, C, E}; H beats exactly {A, B, C, E}.
    for &x in &[b, c, e] {
        set(&mut beats, &mut decided, a, x);
    }
    for &x in &[d, f, g, h] {
        if x != h {
            set(&mut beats, &mut decided, x, a);
        }
    }
    for &x in &[a, b, c, e] {
        set(&mut beats, &mut decided, h, x);
    }
    for &x in &[d, f, g] {
        set(&mut beats, &mut decided, x, h);
    }
    set(&mut beats, &mut decided, c, d);
    set(&mut beats, &mut decided, e, f);
    set(&mut beats, &mut decided, e, g);
    // Everything else: lower index wins.
    for i in 0..n {
        for j in (i + 1)..n {
            if !decided[i][j] {
                beats[i][j] = true;
            }
        }
    }
    Tournament::validate(n, &beats).expect("construction is a valid tournament")
}

/// Uniformly random tournament from a seeded generator.
pub fn gen_random(n: usize, seed: u64) -> Result<Tournament, TournamentError> {
    use rand::{Rng, SeedableRng};
    if !(2..=MAX_TEAMS).contains(&n) {
        return Err(TournamentError::SizeOutOfRange { n, min: 2, max: MAX_TEAMS });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut rows = vec![0u32; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<bool>() {
                rows[i] |= 1 << j;
            } else {
                rows[j] |= 1 << i;
            }
        }
    }
    Ok(Tournament { n, rows })
}

// ----------------------------------------------------------------------
// Enumeration
// ----------------------------------------------------------------------

/// Iterates all `2^(n(n-1)/2)` labeled tournaments on `n` teams, or one
/// canonical representative per isomorphism class.
pub fn enumerate_tournaments(
    n: usize,
    canonical_only: bool,
) -> Result<impl Iterator<Item = Tournament>, TournamentError> {
    let cap = caps::effective(if canonical_only {
        caps::ENUMERATE_CANONICAL
    } else {
        caps::ENUMERATE_LABELED
    })
    .min(11);
    if !(2..=cap).contains(&n) {
        return Err(TournamentError::SizeOutOfRange { n, min: 2, max: cap });
    }
    let total = 1u64 << Tournament::pair_count(n);
    Ok((0..total).filter_map(move |code| {
        let t = Tournament::decode(n, code);
        if !canonical_only || t.is_min_encoding() {
            Some(t)
        } else {
            None
        }
    }))
}

/// Convenience: the three-team cycle `0 -> 1 -> 2 -> 0`.
pub fn three_cycle() -> Tournament {
    gen_balanced(2).expect("k = 2 is in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transitive(n: usize) -> Tournament {
        let mut beats = vec![vec![false; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                beats[i][j] = true;
            }
        }
        Tournament::validate(n, &beats).unwrap()
    }

    #[test]
    fn three_cycle_is_valid() {
        let t = three_cycle();
        assert_eq!(t.team_count(), 3);
        assert!(t.beats(0, 1) && t.beats(1, 2) && t.beats(2, 0));
    }

    #[test]
    fn validate_rejects_symmetric_pair() {
        let mut beats = vec![vec![false; 3]; 3];
        beats[0][1] = true;
        beats[1][0] = true;
        beats[1][2] = true;
        beats[0][2] = true;
        let err = Tournament::validate(3, &beats).unwrap_err();
        assert_eq!(err, TournamentError::IncompleteOrSymmetricPair(0, 1));
    }

    #[test]
    fn validate_rejects_reflexive_edge() {
        let mut beats = vec![vec![false; 3]; 3];
        beats[0][0] = true;
        beats[0][1] = true;
        beats[1][2] = true;
        beats[0][2] = true;
        let err = Tournament::validate(3, &beats).unwrap_err();
        assert_eq!(err, TournamentError::ReflexiveEdge(0));
    }

    #[test]
    fn validate_rejects_bad_size() {
        assert!(matches!(
            Tournament::validate(1, &[vec![false]]),
            Err(TournamentError::SizeOutOfRange { .. })
        ));
    }

    #[test]
    fn neighborhoods_partition() {
        let t = three_cycle();
        assert_eq!(t.out_neighborhood(0).unwrap(), TeamSet::singleton(1));
        assert_eq!(t.in_neighborhood(0).unwrap(), TeamSet::singleton(2));
        for n in 2..=6 {
            let t = gen_random(n, 7 + n as u64).unwrap();
            for i in 0..n {
                let out = t.out_neighborhood(i).unwrap();
                let inn = t.in_neighborhood(i).unwrap();
                assert!(out.intersection(inn).is_empty());
                assert!(!out.contains(i) && !inn.contains(i));
                assert_eq!(
                    out.union(inn).union(TeamSet::singleton(i)),
                    TeamSet::full(n)
                );
            }
        }
        assert!(t.out_neighborhood(5).is_err());
    }

    #[test]
    fn balanced_tournament_degrees() {
        for k in 2..=5 {
            let t = gen_balanced(k).unwrap();
            assert_eq!(t.team_count(), 2 * k - 1);
            for i in 0..t.team_count() {
                assert_eq!(t.out_degree(i), k - 1);
            }
        }
        // Team 5 (1-based) of the 5-team balanced tournament beats {1, 2}.
        let t = gen_balanced(3).unwrap();
        assert_eq!(t.out_neighborhood(4).unwrap(), [0, 1].into_iter().collect());
        // 5-team balanced, team 1: out = {2,3}, in = {4,5} (1-based).
        assert_eq!(t.out_neighborhood(0).unwrap(), [1, 2].into_iter().collect());
        assert_eq!(t.in_neighborhood(0).unwrap(), [3, 4].into_iter().collect());
        assert!(gen_balanced(17).is_err());
    }

    #[test]
    fn balanced_k2_is_three_cycle() {
        assert_eq!(gen_balanced(2).unwrap(), three_cycle());
    }

    #[test]
    fn kryptonite_structure() {
        // n=4, inner: 2 beats 3 (1-based) -> out-degrees (2, 2, 1, 1).
        let t = gen_kryptonite(4, None).unwrap();
        let degs: Vec<usize> = (0..4).map(|i| t.out_degree(i)).collect();
        assert_eq!(degs, vec![2, 2, 1, 1]);
        // Team n beats exactly team 1.
        assert_eq!(t.out_neighborhood(3).unwrap(), TeamSet::singleton(0));
        // n=3 is forced to be the 3-cycle.
        assert_eq!(gen_kryptonite(3, None).unwrap(), three_cycle());
        // Custom inner tournament is honored.
        let inner = Tournament::from_edges(2, &[(1, 0)]).unwrap();
        let t = gen_kryptonite(4, Some(&inner)).unwrap();
        assert!(t.beats(2, 1));
    }

    #[test]
    fn cover_example_shape() {
        let t = gen_rseb_cover_example();
        let (a, h) = (0, 7);
        assert_eq!(t.out_neighborhood(a).unwrap(), [1, 2, 4].into_iter().collect());
        assert_eq!(t.out_degree(h), 4);
        assert!(t.beats(a, 1));
        // Every team that beats H also beats A.
        assert!(t.beats(h, a));
        let beats_h = t.in_neighborhood(h).unwrap();
        for x in beats_h.iter() {
            assert!(t.beats(x, a));
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_tournaments(3, false).unwrap().count(), 8);
        assert_eq!(enumerate_tournaments(4, false).unwrap().count(), 64);
        // Isomorphism class counts for n = 3, 4, 5.
        assert_eq!(enumerate_tournaments(3, true).unwrap().count(), 2);
        assert_eq!(enumerate_tournaments(4, true).unwrap().count(), 4);
        assert_eq!(enumerate_tournaments(5, true).unwrap().count(), 12);
        assert!(enumerate_tournaments(8, true).is_err());
    }

    #[test]
    fn labeled_enumeration_is_distinct() {
        use std::collections::HashSet;
        let all: HashSet<u64> = enumerate_tournaments(4, false)
            .unwrap()
            .map(|t| t.encode())
            .collect();
        assert_eq!(all.len(), 64);
    }

    /// Independent oracle: partition labeled tournaments into isomorphism
    /// classes by explicit orbit computation, then compare class count and
    /// key agreement with `canonical_form`.
    #[test]
    fn canonical_form_matches_orbit_partition() {
        use itertools::Itertools;
        for n in 3..=5usize {
            let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
            let mut class_of = std::collections::HashMap::new();
            let mut classes = 0usize;
            for t in enumerate_tournaments(n, false).unwrap() {
                let code = t.encode();
                if class_of.contains_key(&code) {
                    continue;
                }
                for p in &perms {
                    class_of.insert(t.relabel(p).encode(), classes);
                }
                classes += 1;
            }
            let expected = [2, 4, 12][n - 3];
            assert_eq!(classes, expected);
            // Keys agree with orbits.
            let mut key_to_class = std::collections::HashMap::new();
            for t in enumerate_tournaments(n, false).unwrap() {
                let key = t.canonical_form().unwrap();
                let class = class_of[&t.encode()];
                let prev = key_to_class.insert(key, class);
                if let Some(prev) = prev {
                    assert_eq!(prev, class);
                }
            }
            assert_eq!(key_to_class.len(), expected);
        }
    }

    #[test]
    fn canonical_form_examples() {
        let c = three_cycle();
        let rotated = c.relabel(&[1, 2, 0]);
        assert_eq!(c.canonical_form().unwrap(), rotated.canonical_form().unwrap());
        assert_ne!(
            c.canonical_form().unwrap(),
            transitive(3).canonical_form().unwrap()
        );
        // Balanced 5 relabeled by reversal is isomorphic to itself.
        let b = gen_balanced(3).unwrap();
        let reversed = b.relabel(&[4, 3, 2, 1, 0]);
        assert_eq!(b.canonical_form().unwrap(), reversed.canonical_form().unwrap());
    }

    #[test]
    fn balanced_is_vertex_transitive_under_rotation() {
        for k in 2..=4usize {
            let n = 2 * k - 1;
            let b = gen_balanced(k).unwrap();
            let key = b.canonical_form().unwrap();
            let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            assert_eq!(b.relabel(&rot).canonical_form().unwrap(), key);
        }
    }

    #[test]
    fn trn_round_trip() {
        for n in 2..=6 {
            let t = gen_random(n, n as u64 * 31).unwrap();
            let text = t.to_trn();
            let back: Tournament = text.parse().unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn trn_parser_rejects_malformed() {
        assert!("3\n-10\n0-1\n10-\n".parse::<Tournament>().is_ok());
        // Symmetric pair: both claim a win.
        assert!(matches!(
            "3\n-11\n1-1\n00-\n".parse::<Tournament>(),
            Err(TournamentError::IncompleteOrSymmetricPair(_, _))
        ));
        // Diagonal must be '-'.
        assert!("3\n110\n0-1\n01-\n".parse::<Tournament>().is_err());
        // Bad row length.
        assert!("3\n-1\n0-1\n01-\n".parse::<Tournament>().is_err());
    }

    #[test]
    fn json_export_shape() {
        let v = three_cycle().to_json();
        assert_eq!(v["n"], 3);
        assert_eq!(v["beats"][0][1], true);
        assert_eq!(v["beats"][0][0], false);
    }

    #[test]
    fn generated_tournaments_validate() {
        let mut all = vec![three_cycle(), gen_rseb_cover_example()];
        for k in 2..=4 {
            all.push(gen_balanced(k).unwrap());
        }
        for n in 3..=8 {
            all.push(gen_kryptonite(n, None).unwrap());
        }
        for t in all {
            let n = t.team_count();
            let beats: Vec<Vec<bool>> = (0..n)
                .map(|i| (0..n).map(|j| i != j && t.beats(i, j)).collect())
                .collect();
            assert_eq!(Tournament::validate(n, &beats).unwrap(), t);
        }
    }

    #[test]
    fn coalition_validation() {
        assert!(Coalition::from_members(&[0, 2], 3).is_ok());
        assert!(Coalition::from_members(&[], 3).is_err());
        assert!(Coalition::from_members(&[3], 3).is_err());
    }
}
