use super::*;

/// Family names accepted by [`build`], with their parameter schemas.
pub const FAMILY_VOCABULARY: &[(&str, &str)] = &[
    ("cycle", "n"),
    ("complete", "n"),
    ("kmn", "m n"),
    ("knn-minus", "n"),
    ("multipartite", "m b"),
    ("gp", "n r"),
    ("hamming", "d r"),
    ("folded-cube", "d"),
    ("pg", "d q"),
    ("pg-prime", "d q"),
    ("h11", ""),
    ("h11-prime", ""),
    ("paley2p", "p r"),
    ("paley2pr", "p r"),
    ("x1", "q"),
    ("kq2d", "q d"),
    ("atd", "q d"),
    ("atq", "q d"),
    ("sporadic:{atd46,atq412,atd56,x2_3,x3_2}", ""),
    ("gdd", "d q r"),
    ("bc", "n m1,m2,..."),
    ("cayley", "{Zn,Dn,Qn} s1 s2 ..."),
    ("graph6", "S"),
];

/// Builds a family instance from its CLI spelling, e.g. `("gp", ["10", "3"])`.
pub fn build(family: &str, params: &[String]) -> Result<FamilyInstance, FamilyError> {
    if let Some(name) = family.strip_prefix("sporadic:") {
        expect_count(family, params, 0)?;
        return sporadic_by_name(name);
    }
    if family == "sporadic" {
        expect_count(family, params, 1)?;
        return sporadic_by_name(&params[0]);
    }
    match family {
        "bc" => return build_bc(params),
        "cayley" => return build_cayley(params),
        "graph6" => {
            expect_count(family, params, 1)?;
            return graph6_input(&params[0]);
        }
        _ => {}
    }
    let nums = params
        .iter()
        .map(|s| s.parse::<u64>().map_err(|_| invalid(format!("expected a non-negative integer, got {s:?}"))))
        .collect::<Result<Vec<u64>, _>>()?;
    let u = |i: usize| nums[i] as usize;
    let arity = FAMILY_VOCABULARY
        .iter()
        .find(|(name, _)| *name == family)
        .map(|(_, schema)| schema.split_whitespace().count())
        .ok_or_else(|| invalid(format!("unknown family {family:?}")))?;
    expect_count(family, params, arity)?;
    match family {
        "cycle" => cycle(u(0)),
        "complete" => complete(u(0)),
        "kmn" => complete_bipartite(u(0), u(1)),
        "knn-minus" => knn_minus_matching(u(0)),
        "multipartite" => multipartite(u(0), u(1)),
        "gp" => generalized_petersen(u(0), u(1)),
        "hamming" => hamming(u(0), u(1)),
        "folded-cube" => folded_cube(u(0)),
        "pg" => projective_incidence(u(0), nums[1], IncidenceVariant::B),
        "pg-prime" => projective_incidence(u(0), nums[1], IncidenceVariant::BPrime),
        "h11" => hadamard11(IncidenceVariant::B),
        "h11-prime" => hadamard11(IncidenceVariant::BPrime),
        "paley2p" => paley_bipartite(nums[0], nums[1], PaleyVariant::G2p),
        "paley2pr" => paley_bipartite(nums[0], nums[1], PaleyVariant::G2pr),
        "x1" => x1_cover(nums[0]),
        "kq2d" => matching_cover(nums[0], nums[1]),
        "atd" => at_cover(nums[0], nums[1], AtVariant::D),
        "atq" => at_cover(nums[0], nums[1], AtVariant::Q),
        "gdd" => gdd_incidence(u(0), nums[1], nums[2]),
        _ => Err(invalid(format!("unknown family {family:?}"))),
    }
}

fn expect_count(family: &str, params: &[String], n: usize) -> Result<(), FamilyError> {
    if params.len() != n {
        return Err(invalid(format!("{family} takes {n} parameter(s), got {}", params.len())));
    }
    Ok(())
}

fn sporadic_by_name(name: &str) -> Result<FamilyInstance, FamilyError> {
    let s = Sporadic::from_name(name).ok_or_else(|| invalid(format!("unknown sporadic graph {name:?}")))?;
    sporadic(s)
}

/// `bc n m1,m2,...` or `bc n m1 m2 ...`.
fn build_bc(params: &[String]) -> Result<FamilyInstance, FamilyError> {
    let (n, rest) = params.split_first().ok_or_else(|| invalid("bc takes n and a connection set"))?;
    let n: usize = n.parse().map_err(|_| invalid(format!("bad size {n:?}")))?;
    let conn = rest
        .iter()
        .flat_map(|s| s.split(','))
        .filter(|s| !s.is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| invalid(format!("bad residue {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    bi_cayley_cyclic(n, &conn)
}

/// `cayley Z8 1 7`, `cayley D6 b ba ba^2`; elements may also be comma-separated.
fn build_cayley(params: &[String]) -> Result<FamilyInstance, FamilyError> {
    let (spec, rest) = params.split_first().ok_or_else(|| invalid("cayley takes a group and a connection set"))?;
    let order = spec.get(1..).and_then(|s| s.parse::<usize>().ok()).ok_or_else(|| invalid(format!("bad group {spec:?}")))?;
    let group = match spec.chars().next() {
        Some('Z') => GroupTable::cyclic(order)?,
        Some('D') => GroupTable::dihedral(order)?,
        Some('Q') => GroupTable::quaternion(order)?,
        _ => return Err(invalid(format!("bad group {spec:?}; expected Zn, Dn or Qn"))),
    };
    let conn = rest
        .iter()
        .flat_map(|s| s.split(','))
        .filter(|s| !s.is_empty())
        .map(|w| group.parse(w).map_err(FamilyError::from))
        .collect::<Result<Vec<_>, _>>()?;
    cayley(&group, &conn)
}
