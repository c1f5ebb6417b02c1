use crate::alphabet::Sym;
use crate::property::Relation;

/// `x ⊴ y` for the given relation (non-strict).
pub fn relation_holds(relation: Relation, x: &[Sym], y: &[Sym]) -> bool {
    match relation {
        Relation::Prefix => y.starts_with(x),
        Relation::Suffix => y.ends_with(x),
        Relation::Factor => x.is_empty() || y.windows(x.len()).any(|win| win == x),
        Relation::Subword => {
            let mut it = y.iter();
            x.iter().all(|a| it.any(|b| b == a))
        }
    }
}

/// `x ⊴ y` and `x ≠ y`.
pub fn properly_related(relation: Relation, x: &[Sym], y: &[Sym]) -> bool {
    x.len() < y.len() && relation_holds(relation, x, y)
}

/// Start of the leftmost occurrence of `x` as a factor of `y`.
pub fn leftmost_occurrence(x: &[Sym], y: &[Sym]) -> Option<usize> {
    if x.is_empty() {
        return Some(0);
    }
    y.windows(x.len()).position(|win| win == x)
}

/// Leftmost greedy embedding of `x` into `y` as a subsequence.
pub fn leftmost_embedding(x: &[Sym], y: &[Sym]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(x.len());
    let mut j = 0;
    for a in x {
        while j < y.len() && y[j] != *a {
            j += 1;
        }
        if j == y.len() {
            return None;
        }
        out.push(j);
        j += 1;
    }
    Some(out)
}
