//! Array geometries on the half-wavelength integer grid.
//!
//! All element positions are exact integers in units of `d0 = lambda/2`, so
//! co-array arithmetic is exact and steering phases are `pi * integer *
//! direction-cosine` with no geometric rounding. Each constructor fixes a
//! canonical element order so steering vectors, selection matrices and
//! serialized output are reproducible.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Integer grid position in the y-z plane, in units of `d0 = lambda/2`.
///
/// Serializes as the pair `[y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint {
    pub y: i32,
    pub z: i32,
}

impl GridPoint {
    pub fn new(y: i32, z: i32) -> Self {
        Self { y, z }
    }
}

impl Serialize for GridPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.y, self.z).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (y, z) = <(i32, i32)>::deserialize(d)?;
        Ok(GridPoint { y, z })
    }
}

/// Axis selector for 1D arrays and per-axis operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Y,
    Z,
}

/// Array family together with its construction parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ArrayKind {
    /// Compact uniform planar array, `myu x mzu` elements at spacing `d0`.
    Upa { myu: u32, mzu: u32 },
    /// Two-level 1D nested array along one axis.
    Na1d { m1: u32, m2: u32, axis: Axis },
    /// L-shaped nested array: one NA along y, one along z, sharing the origin.
    Lna { my1: u32, my2: u32, mz1: u32, mz2: u32 },
    /// Planar nested array: compact UPA plus sparse UPA, sharing the origin.
    Pna { m1d: u32, m2d: u32, m1s: u32, m2s: u32 },
}

impl ArrayKind {
    /// Construction parameters in constructor order.
    pub fn params(&self) -> Vec<u32> {
        match *self {
            ArrayKind::Upa { myu, mzu } => vec![myu, mzu],
            ArrayKind::Na1d { m1, m2, .. } => vec![m1, m2],
            ArrayKind::Lna { my1, my2, mz1, mz2 } => vec![my1, my2, mz1, mz2],
            ArrayKind::Pna { m1d, m2d, m1s, m2s } => vec![m1d, m2d, m1s, m2s],
        }
    }

    /// Short lowercase name: `upa`, `na1d`, `lna`, `pna`.
    pub fn name(&self) -> &'static str {
        match self {
            ArrayKind::Upa { .. } => "upa",
            ArrayKind::Na1d { .. } => "na1d",
            ArrayKind::Lna { .. } => "lna",
            ArrayKind::Pna { .. } => "pna",
        }
    }
}

/// A tagged set of element positions with a canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayGeometry {
    #[serde(flatten)]
    pub kind: ArrayKind,
    /// Number of physical elements (shared origin already deduplicated).
    pub m: usize,
    /// Element positions in the constructor's canonical order.
    pub elements: Vec<GridPoint>,
}

impl ArrayGeometry {
    fn new(kind: ArrayKind, elements: Vec<GridPoint>) -> Self {
        Self { kind, m: elements.len(), elements }
    }

    /// True when every element lies on a single coordinate axis.
    pub fn is_collinear(&self) -> Option<Axis> {
        if self.elements.iter().all(|p| p.y == 0) {
            Some(Axis::Z)
        } else if self.elements.iter().all(|p| p.z == 0) {
            Some(Axis::Y)
        } else {
            None
        }
    }
}

/// Normalized positions of a two-level 1D nested array: the inner compact ULA
/// `{0, .., m1-1}` followed by the outer sparse ULA `{i(m1+1)-1 : i = 1..m2}`.
fn nested_positions(m1: u32, m2: u32) -> Vec<i32> {
    let mut pos: Vec<i32> = (0..m1 as i32).collect();
    pos.extend((1..=m2 as i32).map(|i| i * (m1 as i32 + 1) - 1));
    pos
}

fn require_positive(value: u32, name: &str) -> Result<()> {
    if value == 0 {
        return Err(Error::InvalidParameter(format!("{name} must be >= 1, got {value}")));
    }
    Ok(())
}

/// Builds a two-level 1D nested array along `axis`.
///
/// Positions are ascending; the element count is `m1 + m2`.
pub fn build_nested_1d(m1: u32, m2: u32, axis: Axis) -> Result<ArrayGeometry> {
    require_positive(m1, "m1")?;
    require_positive(m2, "m2")?;
    let elements = nested_positions(m1, m2)
        .into_iter()
        .map(|d| match axis {
            Axis::Y => GridPoint::new(d, 0),
            Axis::Z => GridPoint::new(0, d),
        })
        .collect();
    Ok(ArrayGeometry::new(ArrayKind::Na1d { m1, m2, axis }, elements))
}

/// Builds the L-shaped nested array: a `(my1, my2)` NA along y and a
/// `(mz1, mz2)` NA along z with the shared origin element deduplicated.
///
/// Canonical order is the y-axis NA ascending, then the z-axis NA ascending
/// excluding the origin, matching the stacked response `[a_y; a_z_de]`.
pub fn build_lna(my1: u32, my2: u32, mz1: u32, mz2: u32) -> Result<ArrayGeometry> {
    require_positive(my1, "my1")?;
    require_positive(my2, "my2")?;
    require_positive(mz1, "mz1")?;
    require_positive(mz2, "mz2")?;
    let mut elements: Vec<GridPoint> =
        nested_positions(my1, my2).into_iter().map(|d| GridPoint::new(d, 0)).collect();
    elements.extend(
        nested_positions(mz1, mz2).into_iter().skip(1).map(|d| GridPoint::new(0, d)),
    );
    Ok(ArrayGeometry::new(ArrayKind::Lna { my1, my2, mz1, mz2 }, elements))
}

/// Builds the planar nested array.
///
/// The compact UPA occupies `-m1d <= y <= m1d`, `-(m2d-1) <= z <= 0` at
/// spacing 1; the sparse UPA occupies `y in {-m1s..m1s} * (2 m1d + 1)`,
/// `z in {0..m2s-1} * m2d`. The shared origin is deduplicated, giving
/// `M = (2 m1d + 1) m2d + (2 m1s + 1) m2s - 1`.
///
/// Canonical order is the sparse block row-major (z ascending, then y), then
/// the compact block row-major excluding the origin, matching `[a_s; a_d]`.
/// `m1d = 0` or `m1s = 0` single-column blocks are accepted.
pub fn build_pna(m1d: u32, m2d: u32, m1s: u32, m2s: u32) -> Result<ArrayGeometry> {
    require_positive(m2d, "m2d")?;
    require_positive(m2s, "m2s")?;
    let (m1d, m2d, m1s, m2s) = (m1d as i32, m2d as i32, m1s as i32, m2s as i32);
    let mut elements = Vec::new();
    for zi in 0..m2s {
        for yi in -m1s..=m1s {
            elements.push(GridPoint::new(yi * (2 * m1d + 1), zi * m2d));
        }
    }
    for z in -(m2d - 1)..=0 {
        for y in -m1d..=m1d {
            if y == 0 && z == 0 {
                continue; // shared with the sparse block
            }
            elements.push(GridPoint::new(y, z));
        }
    }
    Ok(ArrayGeometry::new(
        ArrayKind::Pna {
            m1d: m1d as u32,
            m2d: m2d as u32,
            m1s: m1s as u32,
            m2s: m2s as u32,
        },
        elements,
    ))
}

/// Builds the geometry described by an [`ArrayKind`].
pub fn build(kind: &ArrayKind) -> Result<ArrayGeometry> {
    match *kind {
        ArrayKind::Upa { myu, mzu } => build_upa(myu, mzu),
        ArrayKind::Na1d { m1, m2, axis } => build_nested_1d(m1, m2, axis),
        ArrayKind::Lna { my1, my2, mz1, mz2 } => build_lna(my1, my2, mz1, mz2),
        ArrayKind::Pna { m1d, m2d, m1s, m2s } => build_pna(m1d, m2d, m1s, m2s),
    }
}

/// Builds the compact UPA on `{0..myu-1} x {0..mzu-1}` in row-major order
/// (z ascending, then y ascending).
pub fn build_upa(myu: u32, mzu: u32) -> Result<ArrayGeometry> {
    require_positive(myu, "myu")?;
    require_positive(mzu, "mzu")?;
    let mut elements = Vec::with_capacity((myu * mzu) as usize);
    for z in 0..mzu as i32 {
        for y in 0..myu as i32 {
            elements.push(GridPoint::new(y, z));
        }
    }
    Ok(ArrayGeometry::new(ArrayKind::Upa { myu, mzu }, elements))
}

/// Maximal centered hole-free rectangle `{|y| <= half_y, |z| <= half_z}` of a
/// lag set. A 1D segment is the degenerate case with one half-extent zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContiguousRect {
    pub half_y: i32,
    pub half_z: i32,
}

impl ContiguousRect {
    /// Number of lags inside the rectangle.
    pub fn len(&self) -> usize {
        (2 * self.half_y as usize + 1) * (2 * self.half_z as usize + 1)
    }

    pub fn is_empty(&self) -> bool {
        false // always contains the origin
    }
}

/// Difference co-array: every pairwise element difference with multiplicity,
/// plus the maximal contiguous centered rectangle.
#[derive(Debug, Clone)]
pub struct CoArray {
    /// Distinct lags sorted by (z, y) with their multiplicities.
    pub differences: Vec<(GridPoint, usize)>,
    pub contiguous: ContiguousRect,
}

impl CoArray {
    /// Multiplicity of a lag (zero when absent).
    pub fn multiplicity(&self, p: GridPoint) -> usize {
        self.differences
            .binary_search_by(|(q, _)| (q.z, q.y).cmp(&(p.z, p.y)))
            .map(|i| self.differences[i].1)
            .unwrap_or(0)
    }

    /// Number of distinct lags.
    pub fn distinct(&self) -> usize {
        self.differences.len()
    }
}

/// Computes the exact multiset of pairwise differences `x_i - x_j` and the
/// maximal centered contiguous rectangle (exhaustive search; lag sets here
/// stay below a few thousand entries). Ties between candidate rectangles are
/// broken toward the larger z extent.
pub fn difference_coarray(g: &ArrayGeometry) -> CoArray {
    let mut counts: HashMap<GridPoint, usize> = HashMap::new();
    for a in &g.elements {
        for b in &g.elements {
            *counts.entry(GridPoint::new(a.y - b.y, a.z - b.z)).or_insert(0) += 1;
        }
    }
    let mut differences: Vec<(GridPoint, usize)> = counts.iter().map(|(&p, &c)| (p, c)).collect();
    differences.sort_by_key(|(p, _)| (p.z, p.y));

    let max_y = counts.keys().map(|p| p.y.abs()).max().unwrap_or(0);
    let max_z = counts.keys().map(|p| p.z.abs()).max().unwrap_or(0);
    let mut best = ContiguousRect { half_y: 0, half_z: 0 };
    let mut best_area = 0usize;
    for hy in 0..=max_y {
        // Contiguity in y at z = 0 is necessary for any rectangle of this width.
        if !(0..=hy).all(|y| counts.contains_key(&GridPoint::new(y, 0))) {
            break;
        }
        let mut hz = 0;
        'grow: while hz < max_z {
            for y in 0..=hy {
                for s in [1, -1] {
                    if !counts.contains_key(&GridPoint::new(y * s, hz + 1))
                        || !counts.contains_key(&GridPoint::new(y * s, -(hz + 1)))
                    {
                        break 'grow;
                    }
                }
            }
            hz += 1;
        }
        let area = (2 * hy as usize + 1) * (2 * hz as usize + 1);
        if area > best_area || (area == best_area && hz > best.half_z) {
            best_area = area;
            best = ContiguousRect { half_y: hy, half_z: hz };
        }
    }
    CoArray { differences, contiguous: best }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn positions_on(g: &ArrayGeometry, axis: Axis) -> Vec<i32> {
        g.elements
            .iter()
            .map(|p| match axis {
                Axis::Y => p.y,
                Axis::Z => p.z,
            })
            .collect()
    }

    #[test]
    fn nested_1d_matches_definition() {
        let g = build_nested_1d(4, 4, Axis::Z).unwrap();
        assert_eq!(positions_on(&g, Axis::Z), vec![0, 1, 2, 3, 4, 9, 14, 19]);
        assert!(g.elements.iter().all(|p| p.y == 0));
    }

    #[test]
    fn nested_1d_minimal_is_two_element_ula() {
        let g = build_nested_1d(1, 1, Axis::Z).unwrap();
        assert_eq!(positions_on(&g, Axis::Z), vec![0, 1]);
    }

    #[test]
    fn nested_1d_2_3_by_direct_evaluation() {
        let g = build_nested_1d(2, 3, Axis::Z).unwrap();
        assert_eq!(positions_on(&g, Axis::Z), vec![0, 1, 2, 5, 8]);
    }

    #[test]
    fn nested_1d_rejects_zero_parameters() {
        assert!(build_nested_1d(0, 4, Axis::Z).is_err());
        assert!(build_nested_1d(4, 0, Axis::Y).is_err());
    }

    #[test]
    fn lna_counts_and_minimal_layout() {
        assert_eq!(build_lna(4, 4, 4, 4).unwrap().m, 15);
        assert_eq!(build_lna(2, 3, 2, 3).unwrap().m, 9);
        let g = build_lna(1, 1, 1, 1).unwrap();
        assert_eq!(
            g.elements,
            vec![GridPoint::new(0, 0), GridPoint::new(1, 0), GridPoint::new(0, 1)]
        );
    }

    #[test]
    fn lna_canonical_order_is_y_then_z_dedup() {
        let g = build_lna(2, 2, 2, 2).unwrap();
        // y-axis NA {0,1,2,5}, then z-axis NA {1,2,5} (origin removed).
        let expect: Vec<GridPoint> = [(0, 0), (1, 0), (2, 0), (5, 0), (0, 1), (0, 2), (0, 5)]
            .iter()
            .map(|&(y, z)| GridPoint::new(y, z))
            .collect();
        assert_eq!(g.elements, expect);
    }

    #[test]
    fn pna_counts() {
        assert_eq!(build_pna(0, 9, 3, 1).unwrap().m, 15);
        assert_eq!(build_pna(1, 3, 1, 3).unwrap().m, 17);
        assert_eq!(build_pna(1, 6, 2, 3).unwrap().m, 32);
    }

    #[test]
    fn pna_degenerate_dedup_single_element() {
        let g = build_pna(0, 1, 0, 1).unwrap();
        assert_eq!(g.m, 1);
        assert_eq!(g.elements, vec![GridPoint::new(0, 0)]);
    }

    #[test]
    fn pna_fig4_layout() {
        // m1d = m2d-parameterisation of the reference layout: compact block of
        // 3x3 below the origin row, sparse 3x3 with spacings (3, 3) above.
        let g = build_pna(1, 3, 1, 3).unwrap();
        let sparse: Vec<GridPoint> = g.elements[..9].to_vec();
        assert_eq!(sparse[0], GridPoint::new(-3, 0));
        assert_eq!(sparse[8], GridPoint::new(3, 6));
        assert!(g.elements[9..].iter().all(|p| p.z <= 0 && p.y.abs() <= 1));
        assert!(!g.elements[9..].contains(&GridPoint::new(0, 0)));
    }

    #[test]
    fn upa_counts_and_order() {
        assert_eq!(build_upa(4, 4).unwrap().m, 16);
        assert_eq!(build_upa(1, 1).unwrap().m, 1);
        let g = build_upa(8, 4).unwrap();
        assert_eq!(g.m, 32);
        assert_eq!(g.elements[0], GridPoint::new(0, 0));
        assert_eq!(g.elements[1], GridPoint::new(1, 0)); // y varies fastest
        assert_eq!(g.elements[8], GridPoint::new(0, 1));
    }

    #[test]
    fn coarray_na1d_4_4_is_hole_free_39_lags() {
        let g = build_nested_1d(4, 4, Axis::Z).unwrap();
        let co = difference_coarray(&g);
        assert_eq!(co.contiguous, ContiguousRect { half_y: 0, half_z: 19 });
        assert_eq!(co.distinct(), 39);
        for z in -19..=19 {
            assert!(co.multiplicity(GridPoint::new(0, z)) > 0, "hole at {z}");
        }
    }

    #[test]
    fn coarray_single_element() {
        let g = build_upa(1, 1).unwrap();
        let co = difference_coarray(&g);
        assert_eq!(co.differences, vec![(GridPoint::new(0, 0), 1)]);
        assert_eq!(co.contiguous, ContiguousRect { half_y: 0, half_z: 0 });
    }

    #[test]
    fn coarray_pna_fig4_contiguous_rectangle() {
        // Cross differences fill y in [-4,4], z in [-8,8]; s-s outliers at
        // |y| = 6 must not extend the hole-free rectangle.
        let g = build_pna(1, 3, 1, 3).unwrap();
        let co = difference_coarray(&g);
        assert_eq!(co.contiguous, ContiguousRect { half_y: 4, half_z: 8 });
    }

    #[test]
    fn coarray_symmetry_and_origin_multiplicity() {
        for g in [
            build_upa(3, 2).unwrap(),
            build_nested_1d(3, 4, Axis::Y).unwrap(),
            build_lna(2, 3, 3, 2).unwrap(),
            build_pna(1, 2, 2, 3).unwrap(),
        ] {
            let co = difference_coarray(&g);
            assert_eq!(co.multiplicity(GridPoint::new(0, 0)), g.m);
            for &(p, c) in &co.differences {
                assert_eq!(co.multiplicity(GridPoint::new(-p.y, -p.z)), c);
            }
        }
    }

    #[test]
    fn nested_coarray_segment_matches_closed_form() {
        // Brute-force check of the hole-free segment size 2*m2*(m1+1) - 1.
        for m1 in 1..=10u32 {
            for m2 in 1..=10u32 {
                let g = build_nested_1d(m1, m2, Axis::Z).unwrap();
                let co = difference_coarray(&g);
                let expect = (m2 * (m1 + 1)) as i32 - 1;
                assert_eq!(
                    co.contiguous,
                    ContiguousRect { half_y: 0, half_z: expect },
                    "na1d({m1},{m2})"
                );
            }
        }
    }

    #[test]
    fn constructor_counts_match_closed_forms_over_sweep() {
        for a in 1..=4u32 {
            for b in 1..=4u32 {
                assert_eq!(build_upa(a, b).unwrap().m, (a * b) as usize);
                for c in 1..=4u32 {
                    for d in 1..=4u32 {
                        assert_eq!(build_lna(a, b, c, d).unwrap().m, (a + b + c + d - 1) as usize);
                        let pna = build_pna(a - 1, b, c - 1, d).unwrap();
                        let expect = (2 * (a - 1) + 1) * b + (2 * (c - 1) + 1) * d - 1;
                        assert_eq!(pna.m, expect as usize);
                    }
                }
            }
        }
    }

    #[test]
    fn no_duplicate_elements_anywhere() {
        for g in [
            build_upa(5, 3).unwrap(),
            build_lna(3, 3, 4, 2).unwrap(),
            build_pna(2, 3, 1, 4).unwrap(),
            build_pna(0, 5, 2, 1).unwrap(),
        ] {
            let mut seen = std::collections::HashSet::new();
            for p in &g.elements {
                assert!(seen.insert(*p), "duplicate element {p:?} in {:?}", g.kind);
            }
        }
    }

    #[test]
    fn geometry_serializes_with_kind_params_elements() {
        let g = build_nested_1d(2, 2, Axis::Z).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["kind"], "na1d");
        assert_eq!(v["m1"], 2);
        assert_eq!(v["axis"], "z");
        assert_eq!(v["m"], 4);
        assert_eq!(v["elements"][3], serde_json::json!([0, 5]));
        let back: ArrayGeometry = serde_json::from_value(v).unwrap();
        assert_eq!(back, g);
    }
}
