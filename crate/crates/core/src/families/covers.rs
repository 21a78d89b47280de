use super::{bi_cayley_cyclic, from_voltage, invalid, knn_minus_matching, FamilyError, FamilyId, FamilyInstance};
use crate::gf::{prime_power, FieldElem, FieldSpec};
use crate::graph::Graph;
use crate::groups::GroupTable;
use crate::voltage::VoltageAssignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtVariant {
    D,
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sporadic {
    Atd46,
    Atq412,
    Atd56,
    X2_3,
    X3_2,
}

impl Sporadic {
    pub const ALL: [Sporadic; 5] = [Sporadic::Atd46, Sporadic::Atq412, Sporadic::Atd56, Sporadic::X2_3, Sporadic::X3_2];

    pub fn name(self) -> &'static str {
        match self {
            Sporadic::Atd46 => "atd46",
            Sporadic::Atq412 => "atq412",
            Sporadic::Atd56 => "atd56",
            Sporadic::X2_3 => "x2_3",
            Sporadic::X3_2 => "x3_2",
        }
    }

    pub fn from_name(s: &str) -> Option<Sporadic> {
        Sporadic::ALL.into_iter().find(|x| x.name() == s)
    }
}

fn field(q: u64) -> Result<FieldSpec, FamilyError> {
    FieldSpec::new(q).map_err(|_| invalid(format!("{q} is not a prime power")))
}

fn odd_field(q: u64) -> Result<FieldSpec, FamilyError> {
    match prime_power(q) {
        Some((p, _)) if p != 2 => field(q),
        _ => Err(invalid(format!("{q} is not an odd prime power"))),
    }
}

/// `X_1(4, q)`: the `Z_4` cover of `K_{q+1}` on `PG(1, q)`, where field
/// element `x` is vertex `x.index()` and `∞` is vertex `q`. The voltage on
/// `(x, y)` is 0 at `∞`, 1 if `y − x` is a nonzero square and 3 otherwise.
pub fn x1_cover(q: u64) -> Result<FamilyInstance, FamilyError> {
    if q % 4 != 3 {
        return Err(invalid(format!("X_1(4,q) needs q ≡ 3 (mod 4), got {q}")));
    }
    let f = field(q)?;
    let inf = q as usize;
    let base = Graph::from_fn(inf + 1, |_, _| true);
    let va = VoltageAssignment::from_arc_rule(base, GroupTable::cyclic(4)?, |x, y| {
        if x == inf || y == inf {
            0
        } else if f.is_nonzero_square(f.sub(FieldElem(y as u32), FieldElem(x as u32))) {
            1
        } else {
            3
        }
    })?;
    Ok(from_voltage(FamilyId::X1, vec![q.to_string()], format!("X1(4,{q})"), va))
}

/// `K_{q+1}^{2d}` with the field's distinguished primitive element.
pub fn matching_cover(q: u64, d: u64) -> Result<FamilyInstance, FamilyError> {
    matching_cover_with_primitive(q, d, None)
}

/// `K_{q+1}^{2d}`: the `Z_d` cover of `K_{q+1,q+1} − (q+1)K_2` on two copies
/// of `PG(1, q)`. Point `i` is vertex `i` and `i'` is vertex `q + 1 + i`,
/// with `∞ = q`. The arc `(i, j')` carries `h mod d` where `j − i = θ^h`, and
/// 0 when `i` or `j` is `∞`. `theta` replaces the distinguished primitive
/// element.
pub fn matching_cover_with_primitive(q: u64, d: u64, theta: Option<FieldElem>) -> Result<FamilyInstance, FamilyError> {
    let f = odd_field(q)?;
    if d < 2 || !(q - 1).is_multiple_of(d) {
        return Err(invalid(format!("K_{{q+1}}^{{2d}} needs d ≥ 2 dividing {}, got {d}", q - 1)));
    }
    let theta = theta.unwrap_or(f.theta());
    if !f.is_primitive(theta) {
        return Err(invalid(format!("{} is not primitive", f.format(theta))));
    }
    let k = q as usize + 1;
    let inf = q as usize;
    let base = Graph::from_fn(2 * k, |u, v| (u < k) != (v < k) && u % k != v % k);
    let mut assignment = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let h = if i == inf || j == inf {
                0
            } else {
                let diff = f.sub(FieldElem(j as u32), FieldElem(i as u32));
                f.dlog_base(theta, diff)? as u64 % d
            };
            assignment.push(((i, k + j), h as usize));
        }
    }
    let va = VoltageAssignment::new(base, GroupTable::cyclic(d as usize)?, &assignment)?;
    let label = format!("K_{{{}}}^{{{}}}", q + 1, 2 * d);
    Ok(from_voltage(FamilyId::Kq2d, vec![q.to_string(), d.to_string()], label, va))
}

/// `AT_D(1+q, 2d)` and `AT_Q(1+q, 2d)`: covers of `K_{q+1}` on `PG(1, q)`
/// (numbered as in [`x1_cover`]) by `D_{2d}` or `Q_{2d}`, with
/// `f(∞, i) = b` and `f(i, j) = ba^h` where `j − i = θ^h`. The rule is
/// evaluated on both arcs of each finite edge and must be antisymmetric.
pub fn at_cover(q: u64, d: u64, variant: AtVariant) -> Result<FamilyInstance, FamilyError> {
    let f = odd_field(q)?;
    let half = (q - 1) / 2;
    let group = match variant {
        AtVariant::D => {
            if d < 2 || !half.is_multiple_of(d) {
                return Err(invalid(format!("AT_D(1+q,2d) needs d ≥ 2 dividing {half}, got {d}")));
            }
            GroupTable::dihedral(2 * d as usize)?
        }
        AtVariant::Q => {
            if d == 0 || !(q - 1).is_multiple_of(d) || half.is_multiple_of(d) {
                return Err(invalid(format!(
                    "AT_Q(1+q,2d) needs d dividing {} but not {half}, got {d}",
                    q - 1
                )));
            }
            GroupTable::quaternion(2 * d as usize)?
        }
    };
    let (a, b) = (group.parse("a")?, group.parse("b")?);
    let inf = q as usize;
    let base = Graph::from_fn(inf + 1, |_, _| true);
    let rule_group = group.clone();
    let va = VoltageAssignment::from_arc_rule(base, group, |x, y| {
        let g = &rule_group;
        if x == inf {
            b
        } else if y == inf {
            g.inv(b)
        } else {
            let h = f.dlog(f.sub(FieldElem(y as u32), FieldElem(x as u32))).expect("distinct points");
            g.mul(b, g.pow(a, h as i64))
        }
    })?;
    let (family, tag) = match variant {
        AtVariant::D => (FamilyId::Atd, "D"),
        AtVariant::Q => (FamilyId::Atq, "Q"),
    };
    let label = format!("AT_{tag}({},{})", q + 1, 2 * d);
    Ok(from_voltage(family, vec![q.to_string(), d.to_string()], label, va))
}

/// The tabulated covers and `X(3, 2)`. Base vertices `1..n` become `0..n−1`;
/// in `X_2(3)` the vertex `i'` becomes `4 + i`.
pub fn sporadic(name: Sporadic) -> Result<FamilyInstance, FamilyError> {
    let params = vec![name.name().to_string()];
    let complete_table = |k: usize, group: GroupTable, table: &[((usize, usize), &str)], label: &str| {
        let arcs: Vec<((usize, usize), &str)> = table.iter().map(|&((u, v), w)| ((u - 1, v - 1), w)).collect();
        let va = VoltageAssignment::from_words(Graph::from_fn(k, |_, _| true), group, &arcs)?;
        Ok::<_, FamilyError>(from_voltage(FamilyId::Sporadic, params.clone(), label.to_string(), va))
    };
    match name {
        Sporadic::Atd46 => complete_table(
            4,
            GroupTable::dihedral(6)?,
            &[((1, 2), "b"), ((1, 3), "ba"), ((1, 4), "ba^-1"), ((2, 3), "ba^-1"), ((2, 4), "ba"), ((3, 4), "b")],
            "AT_D(4,6)",
        ),
        Sporadic::Atq412 => complete_table(
            4,
            GroupTable::quaternion(12)?,
            &[((1, 2), "b"), ((1, 3), "ba^2"), ((1, 4), "ba^4"), ((2, 3), "b"), ((2, 4), "ba^3"), ((3, 4), "b")],
            "AT_Q(4,12)",
        ),
        Sporadic::Atd56 => complete_table(
            5,
            GroupTable::dihedral(6)?,
            &[
                ((1, 2), "ab"),
                ((1, 3), "b"),
                ((1, 4), "ba"),
                ((1, 5), "b"),
                ((2, 3), "ba"),
                ((2, 4), "b"),
                ((2, 5), "b"),
                ((3, 4), "ab"),
                ((3, 5), "b"),
                ((4, 5), "b"),
            ],
            "AT_D(5,6)",
        ),
        Sporadic::X2_3 => {
            let zero = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 1), (2, 3), (3, 1), (3, 2), (4, 1), (4, 5), (5, 1), (5, 4)];
            let one = [(2, 5), (3, 4), (4, 3), (5, 2)];
            let two = [(2, 4), (3, 5), (4, 2), (5, 3)];
            let mut arcs = Vec::new();
            for (set, x) in [(&zero[..], 0), (&one[..], 1), (&two[..], 2)] {
                arcs.extend(set.iter().map(|&(i, j)| ((i - 1, 4 + j), x)));
            }
            let base = knn_minus_matching(5)?.graph;
            let va = VoltageAssignment::new(base, GroupTable::cyclic(3)?, &arcs)?;
            Ok(from_voltage(FamilyId::Sporadic, params, "X2(3)".into(), va))
        }
        Sporadic::X3_2 => {
            let bc = bi_cayley_cyclic(14, &[0, 1, 9, 11])?;
            Ok(FamilyInstance { family: FamilyId::Sporadic, params, label: "X(3,2)".into(), ..bc })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::are_isomorphic;
    use crate::families::generalized_petersen;

    #[test]
    fn x1_small_cases() {
        let x3 = x1_cover(3).unwrap();
        assert_eq!(x3.graph.order(), 16);
        let mk = generalized_petersen(8, 3).unwrap();
        assert!(are_isomorphic(&x3.graph, &mk.graph).is_some());
        let x7 = x1_cover(7).unwrap();
        assert_eq!(x7.graph.order(), 32);
        assert_eq!(x7.graph.regular_valency(), Some(7));
        assert!(x7.voltage.as_ref().unwrap().cover_connected().unwrap());
        assert!(x1_cover(5).is_err());
        assert!(x1_cover(15).is_err());
    }

    #[test]
    fn matching_cover_cases() {
        let k44 = matching_cover(3, 2).unwrap();
        assert!(are_isomorphic(&k44.graph, &generalized_petersen(8, 3).unwrap().graph).is_some());
        let k8 = matching_cover(7, 3).unwrap();
        assert_eq!(k8.graph.order(), 48);
        assert_eq!(k8.graph.regular_valency(), Some(7));
        assert!(matching_cover(7, 4).is_err());
        assert!(matching_cover(8, 7).is_err());
    }

    #[test]
    fn at_cover_cases() {
        let d = at_cover(5, 2, AtVariant::D).unwrap();
        assert_eq!((d.graph.order(), d.graph.regular_valency()), (24, Some(5)));
        assert!(d.voltage.as_ref().unwrap().cover_connected().unwrap());
        let q = at_cover(5, 4, AtVariant::Q).unwrap();
        assert_eq!((q.graph.order(), q.graph.regular_valency()), (48, Some(5)));
        assert!(at_cover(5, 4, AtVariant::D).is_err());
        assert!(at_cover(5, 2, AtVariant::Q).is_err());
        assert!(at_cover(7, 3, AtVariant::D).is_ok());
    }

    #[test]
    fn sporadic_sizes() {
        let expect = [(Sporadic::Atd46, 24, 3), (Sporadic::Atq412, 48, 3), (Sporadic::Atd56, 30, 4), (Sporadic::X2_3, 30, 4), (Sporadic::X3_2, 28, 4)];
        for (name, n, k) in expect {
            let fi = sporadic(name).unwrap();
            assert_eq!(fi.graph.order(), n, "{}", fi.label);
            assert_eq!(fi.graph.regular_valency(), Some(k), "{}", fi.label);
            assert!(fi.graph.is_connected(), "{}", fi.label);
        }
        assert!(sporadic(Sporadic::X3_2).unwrap().graph.bipartition().is_some());
    }
}
