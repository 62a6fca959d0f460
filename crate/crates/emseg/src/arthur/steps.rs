//! The Step 2 parameter and the Step 1 lifts.

use std::collections::BTreeMap;

use super::LanglandsData;
use crate::aparam::{AParameter, ExSupp, Summand};
use crate::error::{Error, Result};
use crate::foundation::{HalfInt, RhoLabel, Sign};
use crate::multiseg::{Ems, ExtSegment};

/// Extended cuspidal support of the representation named by `l`.
pub fn ex_supp_of_langlands(l: &LanglandsData) -> ExSupp {
    l.ex_supp()
}

/// k_{rho,z} for z >= 0; zero entries are omitted.
pub fn k_profile(l: &LanglandsData) -> BTreeMap<(RhoLabel, HalfInt), u32> {
    let mut k: BTreeMap<(RhoLabel, HalfInt), u32> = BTreeMap::new();
    for d in l.deltas() {
        let mut zs = Vec::new();
        if d.x >= HalfInt::ZERO {
            zs.push(d.x);
        }
        if -d.y >= HalfInt::ZERO && -d.y != d.x {
            zs.push(-d.y);
        }
        for z in zs {
            *k.entry((d.rho.clone(), z)).or_default() += 1;
        }
    }
    for s in l.tempered.phi.summands() {
        *k.entry((s.rho.clone(), HalfInt::from_twice(s.a as i64 - 1)))
            .or_default() += 1;
    }
    k
}

/// Per label and residue class, the z >= 0 range [start, top] covering every key.
fn z_ranges<'a, I>(keys: I) -> Vec<(RhoLabel, HalfInt, HalfInt)>
where
    I: IntoIterator<Item = &'a (RhoLabel, HalfInt)>,
{
    let mut top: BTreeMap<(RhoLabel, bool), HalfInt> = BTreeMap::new();
    for (rho, z) in keys {
        if *z < HalfInt::ZERO {
            continue;
        }
        let t = top.entry((rho.clone(), z.is_integer())).or_insert(*z);
        *t = (*t).max(*z);
    }
    top.into_iter()
        .map(|((rho, int), t)| (rho, if int { HalfInt::ZERO } else { HalfInt::HALF }, t))
        .collect()
}

/// M_{rho,x} = sum over z >= x of k_{rho,z}, for every x >= 0.
pub fn check_m_consistency(l: &LanglandsData) -> bool {
    let k = k_profile(l);
    let m = l.ex_supp();
    let keys: Vec<(RhoLabel, HalfInt)> = k.keys().chain(m.keys()).cloned().collect();
    for (rho, start, top) in z_ranges(&keys) {
        let mut x = start;
        while x <= top {
            let lhs = m.get(&(rho.clone(), x)).copied().unwrap_or(0);
            let mut rhs = 0;
            let mut z = x;
            while z <= top {
                rhs += k.get(&(rho.clone(), z)).copied().unwrap_or(0);
                z = z + 1;
            }
            if lhs != rhs {
                return false;
            }
            x = x + 1;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step2 {
    Candidate(AParameter),
    /// k_{rho,z} < k_{rho,z+1}.
    NotArthur {
        rho: RhoLabel,
        z: HalfInt,
    },
}

/// The Step 2 parameter. `l` must have every x_i >= 0.
pub fn step2_candidate(l: &LanglandsData) -> Result<Step2> {
    if let Some(d) = l.deltas().iter().find(|d| d.x < HalfInt::ZERO) {
        return Err(Error::Contract(format!(
            "Step 2 needs x >= 0, found D[{},{}]",
            d.x, d.y
        )));
    }
    let k = k_profile(l);
    let get = |rho: &RhoLabel, z: HalfInt| k.get(&(rho.clone(), z)).copied().unwrap_or(0);
    let mut summands = Vec::new();
    for (rho, start, top) in z_ranges(k.keys()) {
        let mut z = start;
        while z <= top {
            let (kz, kn) = (get(&rho, z), get(&rho, z + 1));
            if kz < kn {
                return Ok(Step2::NotArthur { rho, z });
            }
            let delta = if z.is_integer() { 0 } else { 1 };
            let a = (z.twice() + 2 + delta) / 2;
            let b = (z.twice() + 2 - delta) / 2;
            for _ in kn..kz {
                summands.push(Summand::new(rho.clone(), a as u32, b as u32));
            }
            z = z + 1;
        }
    }
    let psi = AParameter::new(l.ctx, summands);
    if psi.total_dim() != l.ctx.dual_dim() {
        return Err(Error::Contract(format!(
            "candidate has dimension {}, expected {}",
            psi.total_dim(),
            l.ctx.dual_dim()
        )));
    }
    Ok(Step2::Candidate(psi))
}

/// k_{j-1} - k_j for j = 1..=t, with k_t = 0.
fn drops(counts: &[u32]) -> Result<Vec<usize>> {
    (0..counts.len())
        .map(|j| {
            let next = counts.get(j + 1).copied().unwrap_or(0);
            counts[j]
                .checked_sub(next)
                .map(|d| d as usize)
                .ok_or_else(|| Error::Precondition(format!("counts increase at k_{}", j + 1)))
        })
        .collect()
}

fn finish(e: &Ems, rho: &RhoLabel, rows: Vec<ExtSegment>) -> Result<Ems> {
    let mut out = e.with_rows(rho, rows);
    let dim = out.psi_of().total_dim();
    let ctx = e.ctx.with_dual_dim(dim).ok_or_else(|| {
        Error::Contract(format!("dimension {dim} fits no group of the same family"))
    })?;
    out = out.with_ctx(ctx);
    let v = out.validate();
    if let Some(first) = v.first() {
        return Err(Error::Contract(format!(
            "lifted multi-segment is not valid: {first}"
        )));
    }
    Ok(out)
}

/// Step 1+: from E+ build E with pi(E) having the given + derivative.
pub fn lift_plus(e: &Ems, rho: &RhoLabel, x: HalfInt, counts: &[u32]) -> Result<Ems> {
    if counts.is_empty() {
        return Ok(e.clone());
    }
    let need = drops(counts)?;
    let mut rows = e.rows(rho).to_vec();
    if let Some(max_b) = rows.iter().map(|r| r.lower).max() {
        if max_b != x - 1 {
            return Err(Error::Precondition(format!(
                "bullet 2: max B is {max_b}, expected {}",
                x - 1
            )));
        }
    }
    for (j0, &n) in need.iter().enumerate() {
        let j = j0 as i64 + 1;
        let (upper, lower) = (x + (j - 2), x - 1);
        let hits: Vec<usize> = (0..rows.len())
            .filter(|&i| rows[i].upper == upper && rows[i].lower == lower)
            .collect();
        if hits.len() < n {
            return Err(Error::Precondition(format!(
                "bullet 3: need {n} rows [{upper},{lower}], found {}",
                hits.len()
            )));
        }
        for &i in hits.iter().rev().take(n) {
            let r = rows[i];
            rows[i] = ExtSegment::new(upper + 1, lower + 1, r.l, r.eta);
        }
    }
    finish(e, rho, rows)
}

/// Step 1-: from E- build E with pi(E) having the given - derivative.
pub fn lift_minus(e: &Ems, rho: &RhoLabel, x: HalfInt, counts: &[u32]) -> Result<Ems> {
    if counts.is_empty() {
        return Ok(e.clone());
    }
    if x >= HalfInt::ZERO {
        return Err(Error::Precondition(format!("Step 1- needs x < 0, got {x}")));
    }
    let need = drops(counts)?;
    let mut rows = e.rows(rho).to_vec();
    if let Some(min_b) = rows.iter().map(|r| r.lower).min() {
        if min_b != x + 1 {
            return Err(Error::Precondition(format!(
                "bullet 2: min B is {min_b}, expected {}",
                x + 1
            )));
        }
    }
    let half = x == -HalfInt::HALF;
    let mut prepend = 0;
    for (j0, &n) in need.iter().enumerate() {
        let j = j0 as i64 + 1;
        if half && j == 1 {
            prepend = n;
            continue;
        }
        let (upper, lower) = (-x + (j - 2), x + 1);
        let hits: Vec<usize> = (0..rows.len())
            .filter(|&i| rows[i].upper == upper && rows[i].lower == lower)
            .collect();
        if hits.len() < n {
            return Err(Error::Precondition(format!(
                "bullet 3: need {n} rows [{upper},{lower}], found {}",
                hits.len()
            )));
        }
        for &i in hits.iter().take(n) {
            let r = rows[i];
            rows[i] = ExtSegment::new(upper + 1, x, r.l + 1, r.eta);
        }
    }
    let phantom = ExtSegment::new(HalfInt::HALF, -HalfInt::HALF, 1, Sign::Plus);
    let mut out = vec![phantom; prepend];
    out.extend(rows);
    finish(e, rho, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::{Family, GroupContext};

    #[test]
    fn profile_of_tempered() {
        let l = LanglandsData::parse(
            "group SOodd rank 6 L( ; (1/2)^- (1/2)^- (1/2)^- (1/2)^- (3/2)^+ )",
        )
        .unwrap();
        let k = k_profile(&l);
        let one = RhoLabel::trivial();
        assert_eq!(k[&(one.clone(), HalfInt::HALF)], 4);
        assert_eq!(k[&(one, HalfInt::from_twice(3))], 1);
        assert!(check_m_consistency(&l));
        match step2_candidate(&l).unwrap() {
            Step2::Candidate(p) => assert_eq!(p.render(), "S_2^3 + S_3*S_2"),
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn monotonicity_failure() {
        let l = LanglandsData::parse("group SOodd rank 5 L( ; (1/2)^+ (3/2)^+ (3/2)^+ )").unwrap();
        assert!(matches!(
            step2_candidate(&l).unwrap(),
            Step2::NotArthur { .. }
        ));
    }

    #[test]
    fn empty_counts_is_identity() {
        let e = Ems::from_twice(GroupContext::new(Family::Sp, 0), &[]);
        assert_eq!(
            lift_plus(&e, &RhoLabel::trivial(), HalfInt::ONE, &[]).unwrap(),
            e
        );
    }
}
