use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{LinerError, Result};
use crate::hull::FlatLattice;
use crate::pointset::PointSet;

/// Hard cap on point counts: the pair-index matrix is dense (n² entries), and
/// every instance of interest here is far smaller.
pub const MAX_POINTS: usize = 2048;

/// A finite point-line incidence structure in which every pair of distinct
/// points lies on exactly one line and every line carries at least two points.
///
/// The representation is canonical: each line is a strictly increasing list of
/// point indices, the line list is sorted lexicographically and duplicate-free,
/// and a dense pair-to-line index is built eagerly (all downstream checkers
/// are pair-lookup-heavy). Instances are immutable after construction and safe
/// to share across threads.
pub struct Liner {
    point_count: usize,
    lines: Vec<Box<[u16]>>,
    line_sets: Vec<PointSet>,
    /// `pair_line[a * point_count + b]` is the id of the unique line through
    /// distinct points a, b; the diagonal is unused.
    pair_line: Box<[u32]>,
    /// Line ids through each point, ascending.
    pencils: Vec<Box<[u32]>>,
    labels: Option<Vec<String>>,
    pub(crate) lattice_cache: OnceLock<Arc<FlatLattice>>,
}

/// Builds and validates a liner from raw input.
///
/// Raw lines may be unsorted; repeated indices inside a line collapse (a line
/// is a point set) and duplicate whole lines merge silently — coset-translate
/// constructions produce both. A pair covered by two *distinct* lines, an
/// uncovered pair, or a line with fewer than two distinct points is an error.
pub fn build_liner(point_count: usize, raw_lines: &[Vec<usize>]) -> Result<Liner> {
    if point_count > MAX_POINTS {
        return Err(LinerError::BudgetExceeded {
            what: "liner point count",
            limit: MAX_POINTS,
        });
    }

    let mut lines: Vec<Box<[u16]>> = Vec::with_capacity(raw_lines.len());
    for (index, raw) in raw_lines.iter().enumerate() {
        let mut pts: Vec<u16> = Vec::with_capacity(raw.len());
        for &p in raw {
            if p >= point_count {
                return Err(LinerError::IndexOutOfRange {
                    line: index,
                    point: p,
                    point_count,
                });
            }
            pts.push(p as u16);
        }
        pts.sort_unstable();
        pts.dedup();
        if pts.len() < 2 {
            return Err(LinerError::ShortLine {
                index,
                len: pts.len(),
            });
        }
        lines.push(pts.into_boxed_slice());
    }

    lines.sort_unstable();
    lines.dedup();

    // (L1): every unordered pair on exactly one line.
    let mut pair_line = vec![u32::MAX; point_count * point_count].into_boxed_slice();
    for (id, line) in lines.iter().enumerate() {
        for (i, &a) in line.iter().enumerate() {
            for &b in &line[i + 1..] {
                let slot = a as usize * point_count + b as usize;
                if pair_line[slot] != u32::MAX {
                    return Err(LinerError::PairMultiplyCovered {
                        a: a as usize,
                        b: b as usize,
                        line1: pair_line[slot] as usize,
                        line2: id,
                    });
                }
                pair_line[slot] = id as u32;
                pair_line[b as usize * point_count + a as usize] = id as u32;
            }
        }
    }
    for a in 0..point_count {
        for b in a + 1..point_count {
            if pair_line[a * point_count + b] == u32::MAX {
                return Err(LinerError::PairUncovered { a, b });
            }
        }
    }

    let line_sets = lines
        .iter()
        .map(|l| PointSet::from_points(point_count, l.iter().map(|&p| p as usize)))
        .collect();

    let mut pencils: Vec<Vec<u32>> = vec![Vec::new(); point_count];
    for (id, line) in lines.iter().enumerate() {
        for &p in line.iter() {
            pencils[p as usize].push(id as u32);
        }
    }

    Ok(Liner {
        point_count,
        lines,
        line_sets,
        pair_line,
        pencils: pencils.into_iter().map(Vec::into_boxed_slice).collect(),
        labels: None,
        lattice_cache: OnceLock::new(),
    })
}

impl Liner {
    #[inline]
    pub fn point_count(&self) -> usize {
        self.point_count
    }

    #[inline]
    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Point indices of a line, strictly increasing.
    #[inline]
    pub fn line_members(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.lines[id].iter().map(|&p| p as usize)
    }

    #[inline]
    pub fn line_set(&self, id: usize) -> &PointSet {
        &self.line_sets[id]
    }

    #[inline]
    pub(crate) fn line_slice(&self, id: usize) -> &[u16] {
        &self.lines[id]
    }

    #[inline]
    pub fn line_len(&self, id: usize) -> usize {
        self.lines[id].len()
    }

    /// Id of the unique line through two distinct points.
    #[inline]
    pub fn line_id(&self, a: usize, b: usize) -> usize {
        debug_assert_ne!(a, b);
        self.pair_line[a * self.point_count + b] as usize
    }

    /// Ids of the lines through a point, ascending.
    #[inline]
    pub fn pencil(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.pencils[p].iter().map(|&id| id as usize)
    }

    pub fn pencil_len(&self, p: usize) -> usize {
        self.pencils[p].len()
    }

    /// The unique line containing two distinct points, as a set.
    pub fn line_through(&self, a: usize, b: usize) -> Result<&PointSet> {
        if a == b {
            return Err(LinerError::EqualPoints { point: a });
        }
        Ok(&self.line_sets[self.line_id(a, b)])
    }

    /// `line(a,b)` with the hull convention `line(a,a) = {a}`.
    pub(crate) fn span2(&self, a: usize, b: usize) -> Span {
        if a == b {
            Span::Single(a as u16)
        } else {
            Span::Line(self.line_id(a, b) as u32)
        }
    }

    pub fn min_line_size(&self) -> Result<usize> {
        self.lines
            .iter()
            .map(|l| l.len())
            .min()
            .ok_or(LinerError::NoLines)
    }

    pub fn max_line_size(&self) -> Result<usize> {
        self.lines
            .iter()
            .map(|l| l.len())
            .max()
            .ok_or(LinerError::NoLines)
    }

    /// Whether every line has at least `k` points.
    pub fn is_k_long(&self, k: usize) -> Result<bool> {
        Ok(self.min_line_size()? >= k)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.point_count {
            return Err(LinerError::InvalidFormat {
                reason: format!(
                    "{} labels for {} points",
                    labels.len(),
                    self.point_count
                ),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The restriction of the liner to `a_set`: lines are the traces
    /// `L ∩ a_set` with at least two points, with points re-indexed.
    pub fn induced_subliner(&self, a_set: &PointSet) -> SublinerMap {
        let parent_points: Vec<usize> = a_set.iter().collect();
        let mut child_index = vec![usize::MAX; self.point_count];
        for (i, &p) in parent_points.iter().enumerate() {
            child_index[p] = i;
        }
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for set in &self.line_sets {
            let trace: Vec<usize> = set
                .iter()
                .filter(|&p| a_set.contains(p))
                .map(|p| child_index[p])
                .collect();
            if trace.len() >= 2 {
                raw.push(trace);
            }
        }
        let liner = build_liner(parent_points.len(), &raw)
            .expect("restriction of a valid liner is a valid liner");
        SublinerMap {
            parent_points,
            liner,
        }
    }
}

impl fmt::Debug for Liner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Liner({} points, {} lines)",
            self.point_count,
            self.lines.len()
        )
    }
}

/// A line id or a single point: the value of `line(a,b)` under the convention
/// that `line(a,a) = {a}`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Span {
    Line(u32),
    Single(u16),
}

impl Span {
    pub(crate) fn members<'a>(&'a self, liner: &'a Liner) -> &'a [u16] {
        match self {
            Span::Line(id) => liner.line_slice(*id as usize),
            Span::Single(p) => std::slice::from_ref(p),
        }
    }

    pub(crate) fn contains(&self, liner: &Liner, p: usize) -> bool {
        match self {
            Span::Line(id) => liner.line_set(*id as usize).contains(p),
            Span::Single(q) => *q as usize == p,
        }
    }

    /// Whether the two spans share a point.
    pub(crate) fn meets(&self, liner: &Liner, other: &Span) -> bool {
        match (self, other) {
            (Span::Line(a), Span::Line(b)) => {
                if a == b {
                    true
                } else {
                    !liner
                        .line_set(*a as usize)
                        .is_disjoint(liner.line_set(*b as usize))
                }
            }
            (Span::Single(p), s) | (s, Span::Single(p)) => s.contains(liner, *p as usize),
        }
    }

    #[cfg(test)]
    pub(crate) fn to_set(&self, liner: &Liner) -> PointSet {
        match self {
            Span::Line(id) => liner.line_set(*id as usize).clone(),
            Span::Single(p) => PointSet::singleton(liner.point_count(), *p as usize),
        }
    }
}

/// An induced subliner together with the parent indices of its points.
pub struct SublinerMap {
    /// Parent point index of each child point, strictly increasing.
    pub parent_points: Vec<usize>,
    pub liner: Liner,
}

#[derive(Serialize, Deserialize)]
struct LinerJson {
    points: usize,
    lines: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

/// Parses the JSON interchange format
/// `{"points": N, "lines": [[i,...],...], "labels": [..]?}`.
pub fn liner_from_json(text: &str) -> Result<Liner> {
    let parsed: LinerJson = serde_json::from_str(text).map_err(|e| LinerError::InvalidFormat {
        reason: e.to_string(),
    })?;
    let liner = build_liner(parsed.points, &parsed.lines)?;
    match parsed.labels {
        Some(labels) => liner.with_labels(labels),
        None => Ok(liner),
    }
}

/// Canonical JSON for a liner (lines sorted, each line ascending).
pub fn liner_to_json(liner: &Liner) -> String {
    let value = LinerJson {
        points: liner.point_count(),
        lines: (0..liner.line_count())
            .map(|id| liner.line_members(id).collect())
            .collect(),
        labels: liner.labels().map(<[String]>::to_vec),
    };
    serde_json::to_string_pretty(&value).expect("liner JSON serializes")
}
