//! Hilbert curve nodes, cells and the exact curve maps.
//!
//! A node of the order-`n` curve is the quaternary string `q1 q2 .. qn`
//! (most significant first); its rank is the same string read as a base-4
//! integer. The four contractions `T_q(p) = ½·H_q·p + ½·h_q` generate both the
//! corner-anchored map ([`map_standard`]) and the cell-center map
//! ([`map_center`]) the agent actually follows.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::dyadic::{Dyadic, ExactPoint};
use crate::error::{Error, Result};

/// Deepest order representable: ranks must fit in a `u64` and cell centers in
/// an `i64` numerator.
pub const MAX_ORDER: u32 = 30;

fn check_order(order: u32) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

/// Number of nodes of the order-`order` curve.
pub fn node_count(order: u32) -> u64 {
    1u64 << (2 * order)
}

/// A node of the order-`n` curve, equivalently a quaternary prefix of length `n`.
///
/// Order 0 is the root of the coverage tree: the whole square, centered at (½, ½).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeIndex {
    order: u32,
    rank: u64,
}

impl NodeIndex {
    pub const ROOT: NodeIndex = NodeIndex { order: 0, rank: 0 };

    pub fn new(order: u32, rank: u64) -> Result<Self> {
        check_order(order)?;
        if rank >= node_count(order) {
            return Err(Error::RankOutOfRange { rank, order });
        }
        Ok(NodeIndex { order, rank })
    }

    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        let order = digits.len() as u32;
        check_order(order)?;
        let mut rank = 0u64;
        for &d in digits {
            if d > 3 {
                return Err(Error::InvalidDigit {
                    digit: char::from_digit(d as u32, 10).unwrap_or('?'),
                });
            }
            rank = rank * 4 + d as u64;
        }
        Ok(NodeIndex { order, rank })
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn rank(self) -> u64 {
        self.rank
    }

    pub fn digits(self) -> Vec<u8> {
        (1..=self.order).map(|pos| self.digit(pos)).collect()
    }

    /// Digit at 1-based position `pos` (`q_pos`).
    pub fn digit(self, pos: u32) -> u8 {
        debug_assert!(pos >= 1 && pos <= self.order);
        ((self.rank >> (2 * (self.order - pos))) & 3) as u8
    }

    pub fn last_digit(self) -> Option<u8> {
        (self.order > 0).then_some((self.rank & 3) as u8)
    }

    /// Start of the node's parameter interval, `rank / 4^order`.
    pub fn t(self) -> Dyadic {
        Dyadic::new(self.rank as i64, 2 * self.order)
    }

    pub fn is_root(self) -> bool {
        self.order == 0
    }

    pub fn parent(self) -> Option<NodeIndex> {
        (self.order > 0).then(|| NodeIndex {
            order: self.order - 1,
            rank: self.rank >> 2,
        })
    }

    pub fn child(self, q: u8) -> Result<NodeIndex> {
        if q > 3 {
            return Err(Error::InvalidDigit {
                digit: char::from_digit(q as u32, 10).unwrap_or('?'),
            });
        }
        check_order(self.order + 1)?;
        Ok(NodeIndex {
            order: self.order + 1,
            rank: self.rank * 4 + q as u64,
        })
    }

    /// The four children in Hilbert order. Panics at `MAX_ORDER`.
    pub fn children(self) -> [NodeIndex; 4] {
        assert!(self.order < MAX_ORDER, "cannot refine past MAX_ORDER");
        [0, 1, 2, 3].map(|q| NodeIndex {
            order: self.order + 1,
            rank: self.rank * 4 + q,
        })
    }

    /// The ancestor with `len` digits (`self` when `len == order`).
    pub fn prefix(self, len: u32) -> NodeIndex {
        assert!(len <= self.order);
        NodeIndex {
            order: len,
            rank: self.rank >> (2 * (self.order - len)),
        }
    }

    /// True when `self` is a (not necessarily strict) prefix of `other`,
    /// i.e. `other`'s cell lies inside `self`'s cell.
    pub fn is_prefix_of(self, other: NodeIndex) -> bool {
        self.order <= other.order && other.prefix(self.order) == self
    }

    pub fn successor(self) -> Option<NodeIndex> {
        (self.rank + 1 < node_count(self.order)).then(|| NodeIndex {
            order: self.order,
            rank: self.rank + 1,
        })
    }

    pub fn predecessor(self) -> Option<NodeIndex> {
        (self.rank > 0).then(|| NodeIndex {
            order: self.order,
            rank: self.rank - 1,
        })
    }

    /// Cell of this node under the center map, computed with integer cell
    /// arithmetic. Agrees with [`map_center`] on every node.
    pub fn cell(self) -> GridCell {
        let (mut i, mut j) = (0u64, 0u64);
        for level in 0..self.order {
            let q = ((self.rank >> (2 * level)) & 3) as u8;
            let half = 1u64 << level;
            (i, j) = match q {
                0 => (j, i),
                1 => (i, j + half),
                2 => (i + half, j + half),
                _ => (2 * half - 1 - j, half - 1 - i),
            };
        }
        GridCell {
            order: self.order,
            i,
            j,
        }
    }
}

impl Ord for NodeIndex {
    /// Lexicographic order on digit strings: Hilbert order within one order,
    /// and a prefix sorts before its extensions.
    fn cmp(&self, other: &Self) -> Ordering {
        let k = self.order.max(other.order);
        let a = self.rank << (2 * (k - self.order));
        let b = other.rank << (2 * (k - other.order));
        a.cmp(&b).then(self.order.cmp(&other.order))
    }
}

impl PartialOrd for NodeIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NodeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            return f.write_str("root");
        }
        for d in self.digits() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NodeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NodeIndex({self})")
    }
}

impl FromStr for NodeIndex {
    type Err = Error;

    /// Parses a quaternary digit string such as `"110"`; `""` or `"root"` is the root.
    fn from_str(s: &str) -> Result<Self> {
        if s == "root" {
            return Ok(NodeIndex::ROOT);
        }
        let digits = s
            .chars()
            .map(|c| match c {
                '0'..='3' => Ok(c as u8 - b'0'),
                _ => Err(Error::InvalidDigit { digit: c }),
            })
            .collect::<Result<Vec<u8>>>()?;
        NodeIndex::from_digits(&digits)
    }
}

impl serde::Serialize for NodeIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for NodeIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Base-4 expansion of `rank`, most significant digit first, padded to `order` digits.
pub fn rank_to_digits(rank: u64, order: u32) -> Result<Vec<u8>> {
    Ok(NodeIndex::new(order, rank)?.digits())
}

/// Sub-square `(i, j)` (column, row) of the `2^order × 2^order` grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridCell {
    pub order: u32,
    pub i: u64,
    pub j: u64,
}

impl GridCell {
    pub fn new(order: u32, i: u64, j: u64) -> Result<Self> {
        check_order(order)?;
        let side = 1u64 << order;
        if i >= side || j >= side {
            return Err(Error::CellOutOfRange { order, i, j });
        }
        Ok(GridCell { order, i, j })
    }

    pub fn center(self) -> ExactPoint {
        ExactPoint::from_parts(
            (2 * self.i + 1) as i64,
            (2 * self.j + 1) as i64,
            self.order + 1,
        )
    }

    /// The cell whose center is `p`, if `p` is exactly such a center.
    pub fn from_center(order: u32, p: ExactPoint) -> Result<Self> {
        check_order(order)?;
        let exp = order + 1;
        let (Some(xn), Some(yn)) = (p.x.numerator_at(exp), p.y.numerator_at(exp)) else {
            return Err(Error::NotACellCenter { order });
        };
        if xn % 2 != 1 || yn % 2 != 1 {
            return Err(Error::NotACellCenter { order });
        }
        GridCell::new(order, ((xn - 1) / 2) as u64, ((yn - 1) / 2) as u64)
    }

    /// Closed square as integer bounds over the denominator `2^scale`.
    fn bounds(self, scale: u32) -> [u64; 4] {
        let s = scale - self.order;
        [
            self.i << s,
            (self.i + 1) << s,
            self.j << s,
            (self.j + 1) << s,
        ]
    }

    /// Closed squares intersect: the cells overlap or share an edge or a corner.
    /// Works across orders.
    pub fn touches(self, other: GridCell) -> bool {
        let k = self.order.max(other.order);
        let [ax0, ax1, ay0, ay1] = self.bounds(k);
        let [bx0, bx1, by0, by1] = other.bounds(k);
        ax0 <= bx1 && bx0 <= ax1 && ay0 <= by1 && by0 <= ay1
    }

    pub fn contains(self, other: GridCell) -> bool {
        if other.order < self.order {
            return false;
        }
        let s = other.order - self.order;
        (other.i >> s, other.j >> s) == (self.i, self.j)
    }

    /// Same order, one king move apart.
    pub fn king_adjacent(self, other: GridCell) -> bool {
        self.order == other.order && self.i.abs_diff(other.i).max(self.j.abs_diff(other.j)) == 1
    }

    /// Same order, one rook move apart.
    pub fn shares_edge(self, other: GridCell) -> bool {
        self.order == other.order && self.i.abs_diff(other.i) + self.j.abs_diff(other.j) == 1
    }

    /// Side length as an exact dyadic.
    pub fn side(self) -> Dyadic {
        Dyadic::new(1, self.order)
    }

    /// Lower-left and upper-right corners.
    pub fn corners(self) -> (ExactPoint, ExactPoint) {
        (
            ExactPoint::from_parts(self.i as i64, self.j as i64, self.order),
            ExactPoint::from_parts(self.i as i64 + 1, self.j as i64 + 1, self.order),
        )
    }
}

/// 2×2 integer matrix with entries in {-1, 0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mat2(pub [[i8; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub fn pow(self, e: u32) -> Mat2 {
        (0..e).fold(Mat2::IDENTITY, |acc, _| acc * self)
    }

    pub fn apply(self, p: ExactPoint) -> ExactPoint {
        let term = |coef: i8, v: Dyadic| match coef {
            1 => v,
            -1 => -v,
            _ => Dyadic::ZERO,
        };
        let m = self.0;
        ExactPoint::new(
            term(m[0][0], p.x) + term(m[0][1], p.y),
            term(m[1][0], p.x) + term(m[1][1], p.y),
        )
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = self.0;
        let b = rhs.0;
        let mut out = [[0i8; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

impl std::ops::Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        Mat2(self.0.map(|row| row.map(|v| -v)))
    }
}

/// One of the four contractions `T_q(p) = ½·H_q·p + ½·h_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transform {
    pub tag: u8,
    pub matrix: Mat2,
    /// `h_q`; applied as `½·h_q`.
    pub offset: [i8; 2],
}

pub const TRANSFORMS: [Transform; 4] = [
    Transform {
        tag: 0,
        matrix: Mat2([[0, 1], [1, 0]]),
        offset: [0, 0],
    },
    Transform {
        tag: 1,
        matrix: Mat2([[1, 0], [0, 1]]),
        offset: [0, 1],
    },
    Transform {
        tag: 2,
        matrix: Mat2([[1, 0], [0, 1]]),
        offset: [1, 1],
    },
    Transform {
        tag: 3,
        matrix: Mat2([[0, -1], [-1, 0]]),
        offset: [2, 1],
    },
];

impl Transform {
    pub fn of(q: u8) -> &'static Transform {
        &TRANSFORMS[q as usize]
    }

    pub fn offset_point(&self) -> ExactPoint {
        ExactPoint::from_parts(self.offset[0] as i64, self.offset[1] as i64, 0)
    }

    pub fn apply(&self, p: ExactPoint) -> ExactPoint {
        let hp = self.matrix.apply(p);
        ExactPoint::new(hp.x.half(), hp.y.half())
            + ExactPoint::from_parts(self.offset[0] as i64, self.offset[1] as i64, 1)
    }
}

/// `T_q` applied to `p`.
pub fn apply_transform(q: u8, p: ExactPoint) -> Result<ExactPoint> {
    if q > 3 {
        return Err(Error::InvalidDigit {
            digit: char::from_digit(q as u32, 10).unwrap_or('?'),
        });
    }
    Ok(Transform::of(q).apply(p))
}

/// Order-1 cell centers `F_0..F_3`.
pub const FIRST_ORDER_CENTERS: [(i64, i64); 4] = [(1, 1), (1, 3), (3, 3), (3, 1)];

pub fn first_order_center(q: u8) -> ExactPoint {
    let (x, y) = FIRST_ORDER_CENTERS[q as usize];
    ExactPoint::from_parts(x, y, 2)
}

/// Corner-anchored map: `T_{q1} ∘ … ∘ T_{qn}` applied to the origin.
pub fn map_standard(node: NodeIndex) -> ExactPoint {
    node.digits()
        .iter()
        .rev()
        .fold(ExactPoint::ORIGIN, |p, &q| Transform::of(q).apply(p))
}

/// Center map: `T_{q1} ∘ … ∘ T_{q(n-1)}` applied to `F_{qn}`. The root maps to (½, ½).
pub fn map_center(node: NodeIndex) -> GridCell {
    let digits = node.digits();
    let Some((&last, init)) = digits.split_last() else {
        return GridCell {
            order: 0,
            i: 0,
            j: 0,
        };
    };
    let p = init
        .iter()
        .rev()
        .fold(first_order_center(last), |p, &q| Transform::of(q).apply(p));
    GridCell::from_center(node.order(), p).expect("center map lands on a cell center")
}

/// `(e0j, e3j)` for each position `j`: parity of the number of 0s and 3s
/// among the digits strictly before `q_j`.
pub fn parity_counters(digits: &[u8]) -> Vec<(u8, u8)> {
    let mut e0 = 0u8;
    let mut e3 = 0u8;
    digits
        .iter()
        .map(|&q| {
            let here = (e0, e3);
            match q {
                0 => e0 ^= 1,
                3 => e3 ^= 1,
                _ => {}
            }
            here
        })
        .collect()
}

fn parity_matrix(e0: u8, e3: u8) -> Mat2 {
    let h0 = TRANSFORMS[0].matrix;
    let h3 = TRANSFORMS[3].matrix;
    h0.pow(e0 as u32) * h3.pow(e3 as u32)
}

/// Closed form `Σ_j 2^-j · H0^e0j · H3^e3j · h_qj`. Equal to [`map_standard`].
pub fn map_simplified(node: NodeIndex) -> ExactPoint {
    let digits = node.digits();
    parity_counters(&digits)
        .into_iter()
        .zip(&digits)
        .enumerate()
        .fold(ExactPoint::ORIGIN, |acc, (idx, ((e0, e3), &q))| {
            let term = parity_matrix(e0, e3).apply(Transform::of(q).offset_point());
            acc + ExactPoint::new(
                Dyadic::new(term.x.numerator(), term.x.exponent() + idx as u32 + 1),
                Dyadic::new(term.y.numerator(), term.y.exponent() + idx as u32 + 1),
            )
        })
}

/// Summed form of the center map:
/// `2^-(n-1) · H0^e0n · H3^e3n · F_qn + Σ_{j<n} 2^-j · H0^e0j · H3^e3j · h_qj`.
///
/// The leading factor is `2^-(n-1)`; it is what expanding the composition gives.
pub fn map_center_summed(node: NodeIndex) -> ExactPoint {
    let digits = node.digits();
    let Some((&last, init)) = digits.split_last() else {
        return ExactPoint::from_parts(1, 1, 1);
    };
    let counters = parity_counters(&digits);
    let n = digits.len() as u32;
    let scale = |p: ExactPoint, exp: u32| {
        ExactPoint::new(
            Dyadic::new(p.x.numerator(), p.x.exponent() + exp),
            Dyadic::new(p.y.numerator(), p.y.exponent() + exp),
        )
    };
    let prefix_sum = init.iter().zip(&counters).enumerate().fold(
        ExactPoint::ORIGIN,
        |acc, (idx, (&q, &(e0, e3)))| {
            acc + scale(
                parity_matrix(e0, e3).apply(Transform::of(q).offset_point()),
                idx as u32 + 1,
            )
        },
    );
    let (e0, e3) = counters[n as usize - 1];
    prefix_sum + scale(parity_matrix(e0, e3).apply(first_order_center(last)), n - 1)
}

/// The node whose center-map cell is `cell`.
pub fn inverse_map_center(cell: GridCell) -> NodeIndex {
    let (mut i, mut j) = (cell.i, cell.j);
    let mut rank = 0u64;
    for level in (1..=cell.order).rev() {
        let half = 1u64 << (level - 1);
        let (hi, hj) = (i >= half, j >= half);
        let q = match (hi, hj) {
            (false, false) => 0,
            (false, true) => 1,
            (true, true) => 2,
            (true, false) => 3,
        };
        let li = if hi { i - half } else { i };
        let lj = if hj { j - half } else { j };
        (i, j) = match q {
            0 => (lj, li),
            1 | 2 => (li, lj),
            _ => (half - 1 - lj, half - 1 - li),
        };
        rank = rank * 4 + q;
    }
    NodeIndex {
        order: cell.order,
        rank,
    }
}

/// The order-`n` approximating polygon's nodes, in rank order.
pub fn curve_nodes(order: u32) -> Result<Vec<GridCell>> {
    check_order(order)?;
    Ok((0..node_count(order))
        .map(|rank| map_center(NodeIndex { order, rank }))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(s: &str) -> NodeIndex {
        s.parse().unwrap()
    }

    fn pt(x: (i64, u32), y: (i64, u32)) -> ExactPoint {
        ExactPoint::new(Dyadic::new(x.0, x.1), Dyadic::new(y.0, y.1))
    }

    #[test]
    fn rank_to_digits_examples() {
        assert_eq!(rank_to_digits(0, 3).unwrap(), vec![0, 0, 0]);
        assert_eq!(rank_to_digits(35, 3).unwrap(), vec![2, 0, 3]);
        assert_eq!(rank_to_digits(15, 2).unwrap(), vec![3, 3]);
        assert_eq!(
            rank_to_digits(16, 2),
            Err(Error::RankOutOfRange { rank: 16, order: 2 })
        );
    }

    #[test]
    fn transform_examples() {
        assert_eq!(
            apply_transform(0, ExactPoint::ORIGIN).unwrap(),
            ExactPoint::ORIGIN
        );
        assert_eq!(
            apply_transform(3, ExactPoint::ORIGIN).unwrap(),
            pt((1, 0), (1, 1))
        );
        assert_eq!(
            apply_transform(2, pt((1, 2), (1, 1))).unwrap(),
            pt((5, 3), (3, 2))
        );
        assert!(apply_transform(4, ExactPoint::ORIGIN).is_err());
    }

    #[test]
    fn transform_table_matches_definitions() {
        let h0 = TRANSFORMS[0].matrix;
        assert_eq!(h0, Mat2([[0, 1], [1, 0]]));
        assert_eq!(TRANSFORMS[1].matrix, Mat2::IDENTITY);
        assert_eq!(TRANSFORMS[2].matrix, Mat2::IDENTITY);
        assert_eq!(TRANSFORMS[3].matrix, -h0);
        let offsets: Vec<_> = TRANSFORMS.iter().map(|t| t.offset).collect();
        assert_eq!(offsets, vec![[0, 0], [0, 1], [1, 1], [2, 1]]);
    }

    #[test]
    fn first_order_centers_are_images_of_the_square_center() {
        let mid = ExactPoint::from_parts(1, 1, 1);
        for q in 0..4 {
            assert_eq!(Transform::of(q).apply(mid), first_order_center(q));
        }
    }

    #[test]
    fn standard_map_examples() {
        assert_eq!(map_standard(node("000")), ExactPoint::ORIGIN);
        assert_eq!(map_standard(node("203")), pt((5, 3), (3, 2)));
        assert_eq!(map_standard(node("3")), pt((1, 0), (1, 1)));
    }

    #[test]
    fn center_map_examples() {
        assert_eq!(map_center(node("0")).center(), pt((1, 2), (1, 2)));
        assert_eq!(map_center(node("3")).center(), pt((3, 2), (1, 2)));
        assert_eq!(map_center(node("00")).center(), pt((1, 3), (1, 3)));
        assert_eq!(map_center(node("21")).center(), pt((5, 3), (7, 3)));
        assert_eq!(map_center(NodeIndex::ROOT).center(), pt((1, 1), (1, 1)));
    }

    #[test]
    fn simplified_map_examples() {
        assert_eq!(map_simplified(node("000")), ExactPoint::ORIGIN);
        assert_eq!(map_simplified(node("203")), pt((5, 3), (3, 2)));
        assert_eq!(map_simplified(node("13")), map_standard(node("13")));
    }

    #[test]
    fn parity_counters_count_strictly_preceding_digits() {
        assert_eq!(
            parity_counters(&[0, 3, 0, 2]),
            vec![(0, 0), (1, 0), (1, 1), (0, 1)]
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            inverse_map_center(GridCell::new(1, 0, 0).unwrap()),
            node("0")
        );
        let c = GridCell::from_center(2, pt((5, 3), (7, 3))).unwrap();
        assert_eq!(inverse_map_center(c), node("21"));
    }

    #[test]
    fn order_one_curve() {
        let centers: Vec<_> = curve_nodes(1).unwrap().iter().map(|c| c.center()).collect();
        assert_eq!(
            centers,
            vec![
                pt((1, 2), (1, 2)),
                pt((1, 2), (3, 2)),
                pt((3, 2), (3, 2)),
                pt((3, 2), (1, 2))
            ]
        );
        assert_eq!(
            curve_nodes(0).unwrap(),
            vec![GridCell::new(0, 0, 0).unwrap()]
        );
    }

    #[test]
    fn endpoints_sit_in_the_bottom_corners() {
        for n in 1..=6 {
            let cells = curve_nodes(n).unwrap();
            let last = 1u64 << n;
            assert_eq!(cells[0], GridCell::new(n, 0, 0).unwrap());
            assert_eq!(
                *cells.last().unwrap(),
                GridCell::new(n, last - 1, 0).unwrap()
            );
        }
    }

    #[test]
    fn integer_cell_map_agrees_with_center_map() {
        for n in 0..=6 {
            for rank in 0..node_count(n) {
                let v = NodeIndex::new(n, rank).unwrap();
                assert_eq!(v.cell(), map_center(v), "{v}");
            }
        }
    }

    #[test]
    fn summed_center_form_agrees_with_composition() {
        for n in 1..=5 {
            for rank in 0..node_count(n) {
                let v = NodeIndex::new(n, rank).unwrap();
                assert_eq!(map_center_summed(v), map_center(v).center(), "{v}");
            }
        }
    }

    #[test]
    fn self_similarity_of_the_center_map() {
        for n in 2..=5 {
            for rank in 0..node_count(n) {
                let v = NodeIndex::new(n, rank).unwrap();
                let q1 = v.digit(1);
                let tail = NodeIndex::new(n - 1, rank % node_count(n - 1)).unwrap();
                let lifted = Transform::of(q1).apply(map_center(tail).center());
                assert_eq!(GridCell::from_center(n, lifted).unwrap(), map_center(v));
            }
        }
    }

    #[test]
    fn hilbert_ordering_puts_prefixes_first() {
        let mut v = [node("1"), node("03"), node("0"), node("10"), node("033")];
        v.sort();
        let s: Vec<String> = v.iter().map(|n| n.to_string()).collect();
        assert_eq!(s, vec!["0", "03", "033", "1", "10"]);
    }

    #[test]
    fn parse_rejects_bad_digits() {
        assert_eq!(
            "124".parse::<NodeIndex>(),
            Err(Error::InvalidDigit { digit: '4' })
        );
        assert_eq!("".parse::<NodeIndex>().unwrap(), NodeIndex::ROOT);
    }

    #[test]
    fn touching_across_orders() {
        let a = GridCell::new(1, 0, 0).unwrap();
        let b = GridCell::new(2, 2, 2).unwrap();
        assert!(a.touches(b));
        let c = GridCell::new(2, 3, 2).unwrap();
        assert!(!a.touches(c));
        assert!(a.contains(GridCell::new(3, 3, 3).unwrap()));
        assert!(!a.contains(b));
    }
}
