//! Built-in example geometries: classical affine and projective spaces over
//! small fields, cyclic difference-family designs, Hermitian curves, and a few
//! hand-picked structures that separate the axioms from one another. Each
//! catalog entry records the invariants the geometry is known to have, so the
//! test suites and the command-line `gallery` verbs can cross-check every
//! build against an independent description.

use std::collections::BTreeSet;

use crate::error::{LinerError, Result};
use crate::field::FiniteField;
use crate::model::{build_liner, Liner, MAX_POINTS};
use crate::pointset::PointSet;
use crate::steiner::{hall_liner_from_group, LoopTable};

/// All vectors of `F_q^len` in lexicographic order (last coordinate moves
/// fastest), so the index of a vector is its base-`q` value.
fn vectors(q: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; len];
    loop {
        out.push(cur.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < q {
                break;
            }
            cur[i] = 0;
        }
    }
}

fn budget_points(count: Option<usize>) -> Result<usize> {
    match count {
        Some(c) if c <= MAX_POINTS => Ok(c),
        _ => Err(LinerError::BudgetExceeded {
            what: "liner point count",
            limit: MAX_POINTS,
        }),
    }
}

/// Affine space of dimension `n` over the field with `q` elements: points are
/// the vectors of `F_q^n` (indexed by base-`q` value), lines are the cosets
/// `{a + t(b - a) : t ∈ F_q}`.
pub fn affine_space(n: usize, q: usize) -> Result<Liner> {
    let field = FiniteField::new(q)?;
    let count = budget_points(q.checked_pow(n as u32))?;
    let pts = vectors(q, n);
    let index = |v: &[usize]| v.iter().fold(0usize, |acc, &d| acc * q + d);
    let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in 0..count {
        for b in (a + 1)..count {
            let mut line: Vec<usize> = (0..q)
                .map(|t| {
                    let w: Vec<usize> = (0..n)
                        .map(|i| field.add(pts[a][i], field.mul(t, field.sub(pts[b][i], pts[a][i]))))
                        .collect();
                    index(&w)
                })
                .collect();
            line.sort_unstable();
            lines.insert(line);
        }
    }
    let lines: Vec<Vec<usize>> = lines.into_iter().collect();
    build_liner(count, &lines)
}

/// The normalized representatives of projective points in `F_q^coords`: the
/// nonzero vectors whose first nonzero coordinate is 1, in lexicographic
/// order.
pub(crate) fn projective_points(field: &FiniteField, coords: usize) -> Vec<Vec<usize>> {
    vectors(field.order(), coords)
        .into_iter()
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect()
}

/// Scale a nonzero vector so its first nonzero coordinate becomes 1.
fn normalize(field: &FiniteField, v: &mut [usize]) {
    let first = v
        .iter()
        .position(|&c| c != 0)
        .expect("projective vectors are nonzero");
    let scale = field.inv(v[first]);
    for c in v.iter_mut() {
        *c = field.mul(scale, *c);
    }
}

/// Projective space of dimension `n` over the field with `q` elements: points
/// are the one-dimensional subspaces of `F_q^{n+1}`, lines the two-dimensional
/// ones. Every line carries `q + 1` points.
pub fn projective_space(n: usize, q: usize) -> Result<Liner> {
    let field = FiniteField::new(q)?;
    let raw = q.checked_pow(n as u32 + 1);
    let count = budget_points(raw.map(|r| (r - 1) / (q - 1)))?;
    let pts = projective_points(&field, n + 1);
    debug_assert_eq!(pts.len(), count);
    let locate = |w: &Vec<usize>| {
        pts.binary_search(w)
            .expect("a normalized vector is a listed projective point")
    };
    let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..count {
        for j in (i + 1)..count {
            let mut line: Vec<usize> = Vec::with_capacity(q + 1);
            line.push(j);
            for t in 0..q {
                let mut w: Vec<usize> = (0..=n)
                    .map(|k| field.add(pts[i][k], field.mul(t, pts[j][k])))
                    .collect();
                normalize(&field, &mut w);
                line.push(locate(&w));
            }
            line.sort_unstable();
            lines.insert(line);
        }
    }
    let lines: Vec<Vec<usize>> = lines.into_iter().collect();
    build_liner(count, &lines)
}

/// One long line `{1, …, n-1}` plus the apex `0` joined to every other point
/// by a two-point line. The smallest non-uniform examples live here.
pub fn near_pencil(n: usize) -> Result<Liner> {
    if n < 3 {
        return Err(LinerError::TooSmall { n, min: 3 });
    }
    let mut lines: Vec<Vec<usize>> = vec![(1..n).collect()];
    for i in 1..n {
        lines.push(vec![0, i]);
    }
    build_liner(n, &lines)
}

/// A 27-point triple system on `F_3^2 × F_3` (point `((a,b),c)` is index
/// `9a + 3b + c`). Pairs sharing the `F_3^2` part complete by inverting the
/// last coordinate's sum; all other pairs complete to `(-u-v, ε - c₁ - c₂)`
/// where the correction `ε` is 1 exactly when the two `F_3^2` parts differ in
/// the second coordinate only. The correction spoils the exchange property on
/// one 9-point flat while every line still has three points.
pub fn tao_liner() -> Result<Liner> {
    let enc = |a: usize, b: usize, c: usize| 9 * a + 3 * b + c;
    let dec = |p: usize| (p / 9, (p / 3) % 3, p % 3);
    let eps = |da: usize, db: usize| usize::from(da == 0 && db != 0);
    let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
    for p in 0..27 {
        for q in (p + 1)..27 {
            let (a1, b1, c1) = dec(p);
            let (a2, b2, c2) = dec(q);
            let third = if (a1, b1) == (a2, b2) {
                enc(a1, b1, (6 - c1 - c2) % 3)
            } else {
                let da = (3 + a1 - a2) % 3;
                let db = (3 + b1 - b2) % 3;
                enc(
                    (6 - a1 - a2) % 3,
                    (6 - b1 - b2) % 3,
                    (6 + eps(da, db) - c1 - c2) % 3,
                )
            };
            let mut line = vec![p, q, third];
            line.sort_unstable();
            lines.insert(line);
        }
    }
    let lines: Vec<Vec<usize>> = lines.into_iter().collect();
    build_liner(27, &lines)
}

/// The design whose lines are all translates of the given base blocks modulo
/// `modulus`. The base blocks must be sets of residues; the pairwise-balance
/// law is checked by the liner validator, so a family that does not cover
/// every difference exactly once is rejected.
pub fn difference_family_liner(modulus: usize, blocks: &[Vec<usize>]) -> Result<Liner> {
    if modulus == 0 {
        return Err(LinerError::PreconditionViolated {
            reason: "difference family needs a positive modulus".into(),
        });
    }
    for block in blocks {
        let distinct: BTreeSet<usize> = block.iter().copied().collect();
        if distinct.len() != block.len() || block.iter().any(|&b| b >= modulus) {
            return Err(LinerError::PreconditionViolated {
                reason: format!("base block {block:?} is not a set of residues modulo {modulus}"),
            });
        }
    }
    let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
    for block in blocks {
        for shift in 0..modulus {
            let mut line: Vec<usize> = block.iter().map(|&b| (b + shift) % modulus).collect();
            line.sort_unstable();
            lines.insert(line);
        }
    }
    let lines: Vec<Vec<usize>> = lines.into_iter().collect();
    build_liner(modulus, &lines)
}

/// 13-point cyclic triple system: graded, but one plane-regularity grade
/// short of the classical planes.
pub fn z13() -> Result<Liner> {
    difference_family_liner(13, &[vec![0, 3, 4], vec![0, 5, 7]])
}

/// 15-point cyclic triple system: satisfies the unique-connector axiom
/// without being a classical plane.
pub fn z15() -> Result<Liner> {
    difference_family_liner(15, &[vec![0, 1, 4], vec![0, 6, 8], vec![0, 5, 10]])
}

/// 91-point cyclic design with seven-point lines and eight parallels to every
/// line through every outside point.
pub fn z91() -> Result<Liner> {
    difference_family_liner(
        91,
        &[
            vec![0, 8, 29, 51, 54, 61, 63],
            vec![0, 11, 16, 17, 31, 35, 58],
            vec![0, 13, 26, 39, 52, 65, 78],
        ],
    )
}

/// Columns of a digit table, one line per column: `0`–`9` then `a`–`z` name
/// points 0 through 35. Any decoding or validity failure is reported as a
/// corrupt table.
pub(crate) fn liner_from_column_table(points: usize, rows: &[&str]) -> Result<Liner> {
    let width = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != width) {
        return Err(LinerError::TableCorrupt {
            reason: "rows have unequal lengths".into(),
        });
    }
    let decode = |ch: u8| -> Result<usize> {
        match ch {
            b'0'..=b'9' => Ok((ch - b'0') as usize),
            b'a'..=b'z' => Ok(10 + (ch - b'a') as usize),
            _ => Err(LinerError::TableCorrupt {
                reason: format!("unexpected character {:?}", ch as char),
            }),
        }
    };
    let mut lines: Vec<Vec<usize>> = Vec::with_capacity(width);
    for col in 0..width {
        let mut line = Vec::with_capacity(rows.len());
        for row in rows {
            let p = decode(row.as_bytes()[col])?;
            if p >= points {
                return Err(LinerError::TableCorrupt {
                    reason: format!("point {p} is out of range"),
                });
            }
            line.push(p);
        }
        line.sort_unstable();
        lines.push(line);
    }
    build_liner(points, &lines).map_err(|e| LinerError::TableCorrupt {
        reason: format!("table is not a valid line list: {e}"),
    })
}

const TABLE25_COLUMNS: [&str; 4] = [
    "00000000111111122222223333344445555666778899aabbil",
    "134567ce34578cd34568de468bh679f78ag79b9aabcddecejm",
    "298dfbhkea6g9kf7c9afkg5cgfihdgifchi8ejjcjdfhgfghkn",
    "iaolgmjnmbohnljonblhmjjdlknmeklnekmkinlimimonooloo",
];

/// A 25-point system with four-point lines in which every line has at least
/// one parallel through every outside point, yet the unique-parallel axiom
/// fails. Stored as an embedded column table.
pub fn table25() -> Result<Liner> {
    liner_from_column_table(25, &TABLE25_COLUMNS)
}

/// A 25-point translation design over `ℤ_5 × ℤ_5` (point `(a,b)` is index
/// `5a + b`): the translates of two base blocks. Same size and line profile
/// as the embedded table design, but some line misses a parallel through
/// some outside point.
pub fn z5z5() -> Result<Liner> {
    let blocks: [[(usize, usize); 4]; 2] = [
        [(0, 0), (1, 0), (0, 1), (2, 2)],
        [(1, 3), (3, 1), (3, 3), (4, 4)],
    ];
    let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
    for block in &blocks {
        for za in 0..5 {
            for zb in 0..5 {
                let mut line: Vec<usize> = block
                    .iter()
                    .map(|&(a, b)| 5 * ((a + za) % 5) + (b + zb) % 5)
                    .collect();
                line.sort_unstable();
                lines.insert(line);
            }
        }
    }
    let lines: Vec<Vec<usize>> = lines.into_iter().collect();
    build_liner(25, &lines)
}

/// An 81-point triple system on `F_3^4` (point `x` is index
/// `27x₀ + 9x₁ + 3x₂ + x₃`): the third point of the line through `x` and `y`
/// is `σ·e₀ - x - y` with `σ = (x₁-y₁)(x₂y₃-x₃y₂)`. The correction `σ` is
/// symmetric in `x` and `y`, vanishes on plenty of pairs, and twists the
/// first coordinate just enough to break gradedness while every plane keeps
/// nine points.
pub fn hall81() -> Result<Liner> {
    let dec = |p: i64| [p / 27, (p / 9) % 3, (p / 3) % 3, p % 3];
    let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
    for x in 0..81i64 {
        for y in (x + 1)..81 {
            let xv = dec(x);
            let yv = dec(y);
            let sigma = (xv[1] - yv[1]) * (xv[2] * yv[3] - xv[3] * yv[2]);
            let mut zv = [0i64; 4];
            for i in 0..4 {
                zv[i] = -xv[i] - yv[i];
            }
            zv[0] += sigma;
            let z = zv.iter().fold(0i64, |acc, &d| acc * 3 + d.rem_euclid(3));
            let mut line = vec![x as usize, y as usize, z as usize];
            line.sort_unstable();
            lines.insert(line);
        }
    }
    let lines: Vec<Vec<usize>> = lines.into_iter().collect();
    build_liner(81, &lines)
}

/// The absolute points of a Hermitian form in the projective plane over
/// `F_{q²}`, with the secant-line traces as lines: `q³ + 1` points, `q + 1`
/// per line. Supported for `q ∈ {2, 3}`.
pub fn classical_unital(q: usize) -> Result<Liner> {
    if q != 2 && q != 3 {
        return Err(LinerError::UnsupportedFieldOrder { q });
    }
    let field = FiniteField::new(q * q)?;
    let plane = projective_space(2, q * q)?;
    let pts = projective_points(&field, 3);
    debug_assert_eq!(pts.len(), plane.point_count());
    let exponent = (q + 1) as u64;
    let mut absolute = PointSet::empty(plane.point_count());
    for (i, v) in pts.iter().enumerate() {
        let norm = v
            .iter()
            .fold(0, |acc, &c| field.add(acc, field.pow(c, exponent)));
        if norm == 0 {
            absolute.insert(i);
        }
    }
    Ok(plane.induced_subliner(&absolute).liner)
}

/// The triple system of the 27-element group with multiplication
/// `(a,b,c)·(a',b',c') = (a+a', b+b', c+c'+ab')` over `F_3` (element
/// `(a,b,c)` is index `9a + 3b + c`). The group has exponent 3, and its
/// derived triple system is a classical affine space in disguise.
pub fn heisenberg27() -> Result<Liner> {
    let enc = |a: usize, b: usize, c: usize| 9 * a + 3 * b + c;
    let mut table = vec![vec![0usize; 27]; 27];
    for (x, row) in table.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            let (a1, b1, c1) = (x / 9, (x / 3) % 3, x % 3);
            let (a2, b2, c2) = (y / 9, (y / 3) % 3, y % 3);
            *cell = enc((a1 + a2) % 3, (b1 + b2) % 3, (c1 + c2 + a1 * b2) % 3);
        }
    }
    let group = LoopTable::new(table, 0)?;
    hall_liner_from_group(&group)
}

/// Invariants a gallery geometry is known to have. The property ids in
/// `flags` use the same strings as the command-line `check` verb, plus
/// `steiner` (all lines have three points) and `hall` (Steiner with all
/// planes of nine points).
#[derive(Clone, Debug)]
pub struct Expected {
    pub points: usize,
    pub lines: usize,
    pub min_line: usize,
    pub max_line: usize,
    pub rank: usize,
    pub flags: &'static [(&'static str, bool)],
    /// `None` when the geometry has no planes to ask about; `Some(None)` when
    /// different plane/line/point triples see different parallel counts;
    /// `Some(Some(k))` when every triple sees exactly `k`.
    pub expected_k_parallel: Option<Option<usize>>,
}

/// A named geometry in the built-in catalog.
pub struct GalleryEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub build: fn() -> Result<Liner>,
    pub expected: Expected,
}

static CATALOG: &[GalleryEntry] = &[
    GalleryEntry {
        name: "fano",
        summary: "7-point projective plane of order 2",
        build: || projective_space(2, 2),
        expected: Expected {
            points: 7,
            lines: 7,
            min_line: 3,
            max_line: 3,
            rank: 3,
            flags: &[
                ("projective", true),
                ("strongly_regular", true),
                ("modular", true),
                ("steiner_projective", true),
                ("proclus", true),
                ("playfair", false),
            ],
            expected_k_parallel: Some(Some(0)),
        },
    },
    GalleryEntry {
        name: "pg32",
        summary: "15-point projective 3-space over the 2-element field",
        build: || projective_space(3, 2),
        expected: Expected {
            points: 15,
            lines: 35,
            min_line: 3,
            max_line: 3,
            rank: 4,
            flags: &[
                ("projective", true),
                ("modular", true),
                ("strongly_regular", true),
                ("ranked", true),
            ],
            expected_k_parallel: Some(Some(0)),
        },
    },
    GalleryEntry {
        name: "ag22",
        summary: "4-point affine plane of order 2, all lines short",
        build: || affine_space(2, 2),
        expected: Expected {
            points: 4,
            lines: 6,
            min_line: 2,
            max_line: 2,
            rank: 4,
            flags: &[("projective", true), ("affine", true), ("boolean", true)],
            expected_k_parallel: Some(Some(0)),
        },
    },
    GalleryEntry {
        name: "ag23",
        summary: "9-point affine plane of order 3",
        build: || affine_space(2, 3),
        expected: Expected {
            points: 9,
            lines: 12,
            min_line: 3,
            max_line: 3,
            rank: 3,
            flags: &[
                ("affine", true),
                ("playfair", true),
                ("hall", true),
                ("injective", true),
                ("hyper_bolyai", true),
                ("modular", false),
                ("hyperbolic", false),
                ("steiner", true),
            ],
            expected_k_parallel: Some(Some(1)),
        },
    },
    GalleryEntry {
        name: "ag24",
        summary: "16-point affine plane of order 4",
        build: || affine_space(2, 4),
        expected: Expected {
            points: 16,
            lines: 20,
            min_line: 4,
            max_line: 4,
            rank: 3,
            flags: &[("affine", true), ("playfair", true)],
            expected_k_parallel: Some(Some(1)),
        },
    },
    GalleryEntry {
        name: "ag33",
        summary: "27-point affine 3-space over the 3-element field",
        build: || affine_space(3, 3),
        expected: Expected {
            points: 27,
            lines: 117,
            min_line: 3,
            max_line: 3,
            rank: 4,
            flags: &[
                ("affine", true),
                ("playfair", true),
                ("regular", true),
                ("weakly_modular", true),
                ("injective", true),
                ("hall", true),
            ],
            expected_k_parallel: Some(Some(1)),
        },
    },
    GalleryEntry {
        name: "near_pencil4",
        summary: "one 3-point line plus an apex joined by short lines",
        build: || near_pencil(4),
        expected: Expected {
            points: 4,
            lines: 4,
            min_line: 2,
            max_line: 3,
            rank: 3,
            flags: &[("projective", true), ("modular", true)],
            expected_k_parallel: Some(Some(0)),
        },
    },
    GalleryEntry {
        name: "tao",
        summary: "27-point triple system with a 9-point flat spoiling exchange",
        build: tao_liner,
        expected: Expected {
            points: 27,
            lines: 117,
            min_line: 3,
            max_line: 3,
            rank: 3,
            flags: &[("steiner", true), ("ranked", false)],
            expected_k_parallel: Some(None),
        },
    },
    GalleryEntry {
        name: "z13",
        summary: "13-point cyclic triple system, graded but 3-irregular",
        build: z13,
        expected: Expected {
            points: 13,
            lines: 26,
            min_line: 3,
            max_line: 3,
            rank: 3,
            flags: &[("steiner", true), ("ranked", true), ("proregular:3", false)],
            expected_k_parallel: Some(Some(3)),
        },
    },
    GalleryEntry {
        name: "z15",
        summary: "15-point cyclic triple system with unique connectors",
        build: z15,
        expected: Expected {
            points: 15,
            lines: 35,
            min_line: 3,
            max_line: 3,
            rank: 3,
            flags: &[("steiner", true), ("affine", true), ("regular", false)],
            expected_k_parallel: Some(Some(4)),
        },
    },
    GalleryEntry {
        name: "z91",
        summary: "91-point cyclic design with 7-point lines",
        build: z91,
        expected: Expected {
            points: 91,
            lines: 195,
            min_line: 7,
            max_line: 7,
            rank: 3,
            flags: &[("hyperbolic", true), ("steiner", false)],
            expected_k_parallel: Some(Some(8)),
        },
    },
    GalleryEntry {
        name: "table25",
        summary: "25-point system where every line has outside parallels",
        build: table25,
        expected: Expected {
            points: 25,
            lines: 50,
            min_line: 4,
            max_line: 4,
            rank: 3,
            flags: &[
                ("hyperaffine", true),
                ("hyper_bolyai", true),
                ("affine", false),
            ],
            expected_k_parallel: Some(Some(4)),
        },
    },
    GalleryEntry {
        name: "z5z5",
        summary: "25-point translation design missing an outside parallel",
        build: z5z5,
        expected: Expected {
            points: 25,
            lines: 50,
            min_line: 4,
            max_line: 4,
            rank: 3,
            flags: &[
                ("hyperaffine", false),
                ("hyper_bolyai", false),
                ("bolyai", true),
            ],
            expected_k_parallel: Some(Some(4)),
        },
    },
    GalleryEntry {
        name: "hall81",
        summary: "81-point triple system, unique parallels without gradedness",
        build: hall81,
        expected: Expected {
            points: 81,
            lines: 1080,
            min_line: 3,
            max_line: 3,
            rank: 4,
            flags: &[
                ("playfair", true),
                ("hall", true),
                ("ranked:3", true),
                ("regular:3", true),
                ("hyper_bolyai", true),
                ("ranked", false),
                ("ranked:4", false),
                ("regular", false),
                ("weakly_modular", false),
                ("steiner", true),
            ],
            expected_k_parallel: Some(Some(1)),
        },
    },
    GalleryEntry {
        name: "u2",
        summary: "9-point Hermitian curve in the projective plane of order 4",
        build: || classical_unital(2),
        expected: Expected {
            points: 9,
            lines: 12,
            min_line: 3,
            max_line: 3,
            rank: 3,
            flags: &[("affine", true), ("steiner", true)],
            expected_k_parallel: Some(Some(1)),
        },
    },
    GalleryEntry {
        name: "u3",
        summary: "28-point Hermitian curve in the projective plane of order 9",
        build: || classical_unital(3),
        expected: Expected {
            points: 28,
            lines: 63,
            min_line: 4,
            max_line: 4,
            rank: 3,
            flags: &[("injective", true), ("hyperbolic", true)],
            expected_k_parallel: Some(Some(5)),
        },
    },
    GalleryEntry {
        name: "heisenberg27",
        summary: "triple system of a 27-element exponent-3 group",
        build: heisenberg27,
        expected: Expected {
            points: 27,
            lines: 117,
            min_line: 3,
            max_line: 3,
            rank: 4,
            flags: &[
                ("regular", true),
                ("ranked", true),
                ("ranked:4", true),
                ("weakly_modular", true),
                ("playfair", true),
                ("hall", true),
            ],
            expected_k_parallel: Some(Some(1)),
        },
    },
];

/// The built-in catalog, in display order.
pub fn gallery_catalog() -> &'static [GalleryEntry] {
    CATALOG
}

/// Look up a catalog entry by name.
pub fn gallery_entry(name: &str) -> Option<&'static GalleryEntry> {
    CATALOG.iter().find(|e| e.name == name)
}
