//! Ordered matchings across a bipartition of a twisted chain graph, and the
//! search that finds one for every balanced bipartition.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::LabError;
use crate::bitset::BitSet;
use crate::generators::twisted_chain_id;
use crate::gf2::Gf2Matrix;
use crate::graph::Graph;
use crate::labels::ChainLabel;

/// Two sides `S` and `T = V \ S`. JSON: `{"S": [...], "T": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    s: BitSet,
}

#[derive(Serialize, Deserialize)]
struct BipartitionJson {
    #[serde(rename = "S")]
    s: Vec<usize>,
    #[serde(rename = "T")]
    t: Vec<usize>,
}

impl Serialize for Bipartition {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        BipartitionJson {
            s: self.s.to_vec(),
            t: self.t().to_vec(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Bipartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = BipartitionJson::deserialize(d)?;
        let n = raw.s.len() + raw.t.len();
        let mut seen = vec![false; n];
        for &v in raw.s.iter().chain(&raw.t) {
            if v >= n || seen[v] {
                return Err(D::Error::custom(format!("vertex {v} is repeated or out of range; S and T must partition 0..{n}")));
            }
            seen[v] = true;
        }
        Ok(Bipartition {
            s: BitSet::from_indices(n, raw.s),
        })
    }
}

impl Bipartition {
    pub fn new(s: BitSet) -> Self {
        Bipartition { s }
    }

    pub fn s(&self) -> &BitSet {
        &self.s
    }

    pub fn t(&self) -> BitSet {
        self.s.complement()
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.len() == 0
    }

    pub fn in_s(&self, v: usize) -> bool {
        self.s.contains(v)
    }

    /// Whether both sides hold at least a third of `c`.
    pub fn is_balanced(&self, c: &BitSet) -> bool {
        let in_s = self.s.intersection_count(c);
        let in_t = c.count() - in_s;
        3 * in_s >= c.count() && 3 * in_t >= c.count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// Which side holds the `A`/`B` vertices (first) and which the `C` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    ST,
    TS,
}

impl Serialize for Direction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Direction::ST => ["S", "T"].serialize(s),
            Direction::TS => ["T", "S"].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pair = <[String; 2]>::deserialize(d)?;
        match (pair[0].as_str(), pair[1].as_str()) {
            ("S", "T") => Ok(Direction::ST),
            ("T", "S") => Ok(Direction::TS),
            _ => Err(serde::de::Error::custom("direction must be [\"S\",\"T\"] or [\"T\",\"S\"]")),
        }
    }
}

/// `v_a` (or `w_a`) matched with `z_{(b,c)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// An ordered matching in a twisted chain of order `host_order`:
/// `a_1 <= key_1 < a_2 <= key_2 < ...` with `key = (b-1)m + c` on the `A`
/// side and `(c-1)m + b` on the `B` side. Its cut submatrix is triangular
/// with a unit diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingCertificate {
    pub side: Side,
    pub direction: Direction,
    pub order: usize,
    pub pairs: Vec<Pair>,
    pub host_order: usize,
}

impl MatchingCertificate {
    fn key(&self, p: &Pair) -> usize {
        let m = self.host_order;
        match self.side {
            Side::A => (p.b - 1) * m + p.c,
            Side::B => (p.c - 1) * m + p.b,
        }
    }

    pub fn row_vertex(&self, p: &Pair) -> usize {
        let label = match self.side {
            Side::A => ChainLabel::A { k: p.a },
            Side::B => ChainLabel::B { k: p.a },
        };
        twisted_chain_id(self.host_order, label)
    }

    pub fn column_vertex(&self, p: &Pair) -> usize {
        twisted_chain_id(self.host_order, ChainLabel::C { i: p.b, j: p.c })
    }

    /// Index ranges and the chain condition.
    pub fn check_chain(&self) -> Result<(), LabError> {
        let m = self.host_order;
        if self.order != self.pairs.len() {
            return Err(LabError::Chain {
                index: 0,
                msg: format!("order {} but {} pairs", self.order, self.pairs.len()),
            });
        }
        let mut prev_key = 0;
        for (i, p) in self.pairs.iter().enumerate() {
            let idx = i + 1;
            if p.a == 0 || p.a > m * m || p.b == 0 || p.b > m || p.c == 0 || p.c > m {
                return Err(LabError::Chain {
                    index: idx,
                    msg: format!("pair ({}, {}, {}) out of range for order {m}", p.a, p.b, p.c),
                });
            }
            let key = self.key(p);
            if i > 0 && p.a <= prev_key {
                return Err(LabError::Chain {
                    index: idx,
                    msg: format!("a_{idx} = {} does not exceed the previous key {prev_key}", p.a),
                });
            }
            if p.a > key {
                return Err(LabError::Chain {
                    index: idx,
                    msg: format!("a_{idx} = {} exceeds its key {key}", p.a),
                });
            }
            prev_key = key;
        }
        Ok(())
    }

    /// Row vertices on the first side of `direction`, column vertices on the
    /// second.
    pub fn check_sides(&self, partition: &Bipartition) -> Result<(), LabError> {
        let row_in_s = self.direction == Direction::ST;
        for (i, p) in self.pairs.iter().enumerate() {
            if partition.in_s(self.row_vertex(p)) != row_in_s || partition.in_s(self.column_vertex(p)) == row_in_s {
                return Err(LabError::WrongSide { index: i + 1 });
            }
        }
        Ok(())
    }

    /// The rows-by-columns submatrix of the adjacency matrix.
    pub fn submatrix(&self, g: &Graph) -> Result<Gf2Matrix, LabError> {
        let m = self.host_order;
        if g.n() != 3 * m * m {
            return Err(LabError::HostSize {
                expected: 3 * m * m,
                found: g.n(),
            });
        }
        let k = self.pairs.len();
        let mut mat = Gf2Matrix::zeros(k, k);
        for (i, p) in self.pairs.iter().enumerate() {
            for (j, q) in self.pairs.iter().enumerate() {
                mat.set(i, j, g.has_edge(self.row_vertex(p), self.column_vertex(q)));
            }
        }
        Ok(mat)
    }
}

/// GF(2) rank of the certificate's submatrix, after checking the chain
/// condition. For a valid certificate on a twisted chain this is its order.
pub fn certificate_rank(g: &Graph, cert: &MatchingCertificate) -> Result<usize, LabError> {
    cert.check_chain()?;
    Ok(cert.submatrix(g)?.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineOrder {
    /// Row-major: rows are scanned, keys `(x-1)m + y`.
    Rows,
    /// Column-major: columns are scanned, keys `(y-1)m + x`.
    Columns,
}

fn z_of(m: usize, x: usize, y: usize) -> usize {
    twisted_chain_id(m, ChainLabel::C { i: x, j: y })
}

fn check_host(m: usize, partition: &Bipartition) -> Result<(), LabError> {
    if partition.len() != 3 * m * m {
        return Err(LabError::HostSize {
            expected: 3 * m * m,
            found: partition.len(),
        });
    }
    Ok(())
}

/// Mixed lines (rows or columns of `C` meeting both sides), ascending.
pub fn mixed_lines(m: usize, partition: &Bipartition, lines: LineOrder) -> Vec<usize> {
    (1..=m)
        .filter(|&l| {
            let mut s = false;
            let mut t = false;
            for o in 1..=m {
                let z = match lines {
                    LineOrder::Rows => z_of(m, l, o),
                    LineOrder::Columns => z_of(m, o, l),
                };
                if partition.in_s(z) {
                    s = true;
                } else {
                    t = true;
                }
            }
            s && t
        })
        .collect()
}

/// `C`-positions `(x, y)` alternating `S`, `T`, `S`, ... and increasing in the
/// chosen lexicographic order: the `j`-th mixed line contributes its first
/// element on the side required by the parity of `j`.
pub fn alternating_sequence(m: usize, partition: &Bipartition, lines: LineOrder) -> Result<Vec<(usize, usize)>, LabError> {
    check_host(m, partition)?;
    let mut out = Vec::new();
    for (j, l) in mixed_lines(m, partition, lines).into_iter().enumerate() {
        let want_s = j % 2 == 0;
        let pos = (1..=m)
            .map(|o| match lines {
                LineOrder::Rows => (l, o),
                LineOrder::Columns => (o, l),
            })
            .find(|&(x, y)| partition.in_s(z_of(m, x, y)) == want_s)
            .expect("a mixed line meets both sides");
        out.push(pos);
    }
    Ok(out)
}

/// Pairs consecutive sequence elements `(2i-1, 2i)`: `a_i` is the key of
/// the odd element, matched with the even element when `v_{a_i}` is in `S`
/// and with the odd element itself otherwise. Pairs all straddle the
/// bipartition; the more common direction is kept, truncated to
/// `floor(len / 4)` pairs.
pub fn matching_from_alternation(
    m: usize,
    partition: &Bipartition,
    sequence: &[(usize, usize)],
    side: Side,
) -> Result<MatchingCertificate, LabError> {
    check_host(m, partition)?;
    if sequence.len() < 4 {
        return Err(LabError::SequenceTooShort(sequence.len()));
    }
    let key = |(x, y): (usize, usize)| match side {
        Side::A => (x - 1) * m + y,
        Side::B => (y - 1) * m + x,
    };
    for (j, &(x, y)) in sequence.iter().enumerate() {
        if partition.in_s(z_of(m, x, y)) != (j % 2 == 0) || (j > 0 && key(sequence[j - 1]) >= key((x, y))) {
            return Err(LabError::NotAlternating { index: j + 1 });
        }
    }
    let mut st = Vec::new();
    let mut ts = Vec::new();
    for pair in sequence.chunks_exact(2) {
        let a = key(pair[0]);
        let row = match side {
            Side::A => ChainLabel::A { k: a },
            Side::B => ChainLabel::B { k: a },
        };
        if partition.in_s(twisted_chain_id(m, row)) {
            let (b, c) = pair[1];
            st.push(Pair { a, b, c });
        } else {
            let (b, c) = pair[0];
            ts.push(Pair { a, b, c });
        }
    }
    let (direction, mut pairs) = if st.len() >= ts.len() {
        (Direction::ST, st)
    } else {
        (Direction::TS, ts)
    };
    pairs.truncate(sequence.len() / 4);
    let cert = MatchingCertificate {
        side,
        direction,
        order: pairs.len(),
        pairs,
        host_order: m,
    };
    cert.check_chain()?;
    cert.check_sides(partition)?;
    Ok(cert)
}

/// Why no certificate was produced: few mixed rows and columns force all
/// non-mixed rows onto one side, which then holds more than `2|C|/3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImbalanceReport {
    pub mixed_rows: usize,
    pub mixed_columns: usize,
    pub needed: usize,
    /// `"S"` or `"T"`: the side holding every non-mixed row.
    pub heavy_side: String,
    pub heavy_count: usize,
    pub c_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum LowerBoundOutcome {
    Certificate(MatchingCertificate),
    Imbalance(ImbalanceReport),
}

/// For a twisted chain of order `m >= 12`, an ordered matching of order
/// `floor(m/12)` across `partition`, from the mixed rows if there are at
/// least `4 floor(m/12)` of them, else from the mixed columns. Otherwise the
/// partition is not balanced on `C` and the report says which side is heavy.
pub fn lower_bound_certificate(g: &Graph, m: usize, partition: &Bipartition) -> Result<LowerBoundOutcome, LabError> {
    if m < 12 {
        return Err(LabError::OrderTooSmall(m));
    }
    if g.n() != 3 * m * m {
        return Err(LabError::HostSize {
            expected: 3 * m * m,
            found: g.n(),
        });
    }
    check_host(m, partition)?;
    let k = m / 12;
    let rows = mixed_lines(m, partition, LineOrder::Rows);
    let cols = mixed_lines(m, partition, LineOrder::Columns);
    for (count, lines, side) in [(rows.len(), LineOrder::Rows, Side::A), (cols.len(), LineOrder::Columns, Side::B)] {
        if count >= 4 * k {
            let mut seq = alternating_sequence(m, partition, lines)?;
            seq.truncate(4 * k);
            let cert = matching_from_alternation(m, partition, &seq, side)?;
            let rank = certificate_rank(g, &cert)?;
            debug_assert_eq!(rank, cert.order);
            return Ok(LowerBoundOutcome::Certificate(cert));
        }
    }
    let c_size = m * m;
    let s_count = (1..=m).flat_map(|x| (1..=m).map(move |y| (x, y))).filter(|&(x, y)| partition.in_s(z_of(m, x, y))).count();
    let non_mixed_in_s = (1..=m).filter(|x| !rows.contains(x)).any(|x| partition.in_s(z_of(m, x, 1)));
    let (heavy_side, heavy_count) = if non_mixed_in_s {
        ("S", s_count)
    } else {
        ("T", c_size - s_count)
    };
    Ok(LowerBoundOutcome::Imbalance(ImbalanceReport {
        mixed_rows: rows.len(),
        mixed_columns: cols.len(),
        needed: 4 * k,
        heavy_side: heavy_side.to_string(),
        heavy_count,
        c_size,
    }))
}

/// A seeded bipartition of the order-`m` twisted chain that is balanced on
/// `C`. Seeds cycle through four shapes: uniform random, a row-major
/// staircase, a column-major staircase, and whole rows; `A` and `B` are
/// split at random.
pub fn random_balanced_partition(m: usize, seed: u64) -> Bipartition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nn = m * m;
    let n = 3 * nn;
    let lo = nn.div_ceil(3);
    let hi = 2 * nn / 3;
    let mut s = BitSet::new(n);
    for v in 0..2 * nn {
        if rng.gen_bool(0.5) {
            s.insert(v);
        }
    }
    let size = rng.gen_range(lo..=hi);
    let positions: Vec<(usize, usize)> = match seed % 4 {
        0 => {
            let mut all: Vec<(usize, usize)> = (1..=m).flat_map(|x| (1..=m).map(move |y| (x, y))).collect();
            all.shuffle(&mut rng);
            all.truncate(size);
            all
        }
        1 => (1..=m).flat_map(|x| (1..=m).map(move |y| (x, y))).take(size).collect(),
        2 => (1..=m).flat_map(|y| (1..=m).map(move |x| (x, y))).take(size).collect(),
        _ => {
            let rows = size.div_ceil(m).min(2 * m / 3).max(m.div_ceil(3));
            let mut chosen: Vec<usize> = (1..=m).collect();
            chosen.shuffle(&mut rng);
            chosen.truncate(rows);
            chosen.into_iter().flat_map(|x| (1..=m).map(move |y| (x, y))).collect()
        }
    };
    for (x, y) in positions {
        s.insert(z_of(m, x, y));
    }
    Bipartition::new(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{twisted_chain, ChainVariant};

    fn partition_with_c(m: usize, s_positions: &[(usize, usize)]) -> Bipartition {
        let mut s = BitSet::new(3 * m * m);
        for &(x, y) in s_positions {
            s.insert(z_of(m, x, y));
        }
        Bipartition::new(s)
    }

    #[test]
    fn single_pair_rank_one() {
        let g = twisted_chain(2, ChainVariant::Bare);
        let cert = MatchingCertificate {
            side: Side::A,
            direction: Direction::ST,
            order: 1,
            pairs: vec![Pair { a: 2, b: 1, c: 2 }],
            host_order: 2,
        };
        assert_eq!(certificate_rank(&g, &cert).unwrap(), 1);
    }

    #[test]
    fn chain_violation_named() {
        let g = twisted_chain(3, ChainVariant::Bare);
        let cert = MatchingCertificate {
            side: Side::A,
            direction: Direction::ST,
            order: 2,
            pairs: vec![Pair { a: 1, b: 1, c: 3 }, Pair { a: 3, b: 2, c: 1 }],
            host_order: 3,
        };
        let err = certificate_rank(&g, &cert).unwrap_err();
        assert!(matches!(err, LabError::Chain { index: 2, .. }), "{err}");
    }

    #[test]
    fn all_c_in_s_gives_empty_sequence() {
        let m = 3;
        let all: Vec<(usize, usize)> = (1..=m).flat_map(|x| (1..=m).map(move |y| (x, y))).collect();
        let p = partition_with_c(m, &all);
        assert!(alternating_sequence(m, &p, LineOrder::Rows).unwrap().is_empty());
    }

    #[test]
    fn two_mixed_rows() {
        let p = partition_with_c(2, &[(1, 1), (2, 1)]);
        let seq = alternating_sequence(2, &p, LineOrder::Rows).unwrap();
        assert_eq!(seq, vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn constant_side_pairs_truncate_to_two() {
        // Every A vertex in S, C rows alternate starting with S.
        let m = 8;
        let nn = m * m;
        let mut s = BitSet::from_indices(3 * nn, 0..nn);
        for x in 1..=m {
            s.insert(z_of(m, x, 1));
        }
        let p = Bipartition::new(s);
        let seq = alternating_sequence(m, &p, LineOrder::Rows).unwrap();
        assert_eq!(seq.len(), 8);
        let cert = matching_from_alternation(m, &p, &seq, Side::A).unwrap();
        assert_eq!(cert.order, 2);
        assert_eq!(cert.direction, Direction::ST);
        let g = twisted_chain(m, ChainVariant::Bare);
        assert_eq!(certificate_rank(&g, &cert).unwrap(), 2);
    }

    #[test]
    fn certificate_json() {
        let cert = MatchingCertificate {
            side: Side::B,
            direction: Direction::TS,
            order: 1,
            pairs: vec![Pair { a: 1, b: 1, c: 1 }],
            host_order: 12,
        };
        let text = serde_json::to_string(&cert).unwrap();
        assert_eq!(
            text,
            r#"{"side":"B","direction":["T","S"],"order":1,"pairs":[{"a":1,"b":1,"c":1}],"host_order":12}"#
        );
        assert_eq!(serde_json::from_str::<MatchingCertificate>(&text).unwrap(), cert);
    }

    #[test]
    fn imbalance_when_c_all_in_s() {
        let m = 12;
        let g = twisted_chain(m, ChainVariant::Bare);
        let all: Vec<(usize, usize)> = (1..=m).flat_map(|x| (1..=m).map(move |y| (x, y))).collect();
        let p = partition_with_c(m, &all);
        match lower_bound_certificate(&g, m, &p).unwrap() {
            LowerBoundOutcome::Imbalance(r) => {
                assert_eq!(r.heavy_side, "S");
                assert_eq!(r.heavy_count, 144);
            }
            other => panic!("expected imbalance, got {other:?}"),
        }
    }

    #[test]
    fn partition_json_round_trip() {
        let p = Bipartition::new(BitSet::from_indices(4, [0, 2]));
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"S":[0,2],"T":[1,3]}"#);
        assert_eq!(serde_json::from_str::<Bipartition>(&text).unwrap(), p);
        assert!(serde_json::from_str::<Bipartition>(r#"{"S":[0,1],"T":[1]}"#).is_err());
    }

    #[test]
    fn harness_partitions_are_balanced() {
        let m = 12;
        let c = BitSet::from_indices(3 * m * m, 2 * m * m..3 * m * m);
        for seed in 0..40 {
            assert!(random_balanced_partition(m, seed).is_balanced(&c), "seed {seed}");
        }
    }
}
