use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DashvRelation, FiniteForestAlgebra};

/// A violated identity, by element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdentityFailure {
    /// `h + h ≠ h`.
    Idempotent { h: usize },
    /// `g + h ≠ h + g`.
    Commutative { g: usize, h: usize },
    /// `v` has no idempotent power.
    Aperiodic { v: usize },
    /// `(vw)^ω ≠ (vw)^ω w (vw)^ω`.
    Da { v: usize, w: usize },
    /// `(u1w1)^ω (u2w2)^ω ≠ (u1w1)^ω u1 w2 (u2w2)^ω` with `u1 ⊣ u2`, `w1 ⊣ w2`.
    Special {
        u1: usize,
        u2: usize,
        w1: usize,
        w2: usize,
    },
}

impl IdentityFailure {
    /// Numbered identity the failure belongs to.
    pub fn identity(&self) -> u8 {
        match self {
            IdentityFailure::Idempotent { .. } | IdentityFailure::Commutative { .. } => 1,
            IdentityFailure::Aperiodic { .. } | IdentityFailure::Da { .. } => 2,
            IdentityFailure::Special { .. } => 3,
        }
    }
}

/// `ω` as a fixed exponent `N` with `vᴺ` idempotent for every `v`.
#[derive(Debug, Clone)]
pub struct Omega {
    pub exponent: usize,
    pub power: Vec<usize>,
}

/// Least uniform exponent, or the first `v` whose powers never stabilise.
pub fn omega(alg: &FiniteForestAlgebra) -> Result<Omega, usize> {
    let n = alg.v_len();
    let mut exponent = 0;
    for v in 0..n {
        let mut p = alg.identity();
        let mut k = 0;
        while alg.compose(p, v) != p {
            if k == n {
                return Err(v);
            }
            p = alg.compose(p, v);
            k += 1;
        }
        exponent = exponent.max(k);
    }
    let power = (0..n).map(|v| alg.power(v, exponent)).collect();
    Ok(Omega { exponent, power })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityReport {
    pub h_size: usize,
    pub v_size: usize,
    pub omega: Option<usize>,
    pub dashv_size: usize,
    pub da_pairs_checked: u64,
    pub special_pairs_checked: u64,
    /// First failure in index order for each identity, if any.
    pub idempotent: Option<IdentityFailure>,
    pub commutative: Option<IdentityFailure>,
    pub identity2: Option<IdentityFailure>,
    pub identity3: Option<IdentityFailure>,
}

impl IdentityReport {
    pub fn first_failure(&self) -> Option<IdentityFailure> {
        self.idempotent
            .or(self.commutative)
            .or(self.identity2)
            .or(self.identity3)
    }

    pub fn holds(&self) -> bool {
        self.first_failure().is_none()
    }
}

/// Scan rows `0..rows` with `check(row) -> (pairs visited, first failing
/// column)`, keeping the failure with the least row.
fn scan<F>(rows: usize, jobs: usize, check: F) -> (u64, Option<(usize, usize)>)
where
    F: Fn(usize) -> (u64, Option<usize>) + Sync,
{
    let merge = |a: (u64, Option<(usize, usize)>), b: (u64, Option<(usize, usize)>)| {
        let first = match (a.1, b.1) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        (a.0 + b.0, first)
    };
    let one = |r: usize| {
        let (n, f) = check(r);
        (n, f.map(|c| (r, c)))
    };
    if jobs <= 1 {
        (0..rows).map(one).fold((0, None), merge)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            (0..rows)
                .into_par_iter()
                .map(one)
                .reduce(|| (0, None), merge)
        })
    }
}

/// Check all three identities. The DA scan visits all `|V|²` pairs and the
/// last scan all `|⊣|²` pairs of pairs.
pub fn check_identities(
    alg: &FiniteForestAlgebra,
    dashv: &DashvRelation,
    jobs: usize,
) -> IdentityReport {
    let (h, v) = (alg.h_len(), alg.v_len());
    let mut report = IdentityReport {
        h_size: h,
        v_size: v,
        omega: None,
        dashv_size: dashv.len(),
        da_pairs_checked: 0,
        special_pairs_checked: 0,
        idempotent: (0..h)
            .find(|&x| alg.add(x, x) != x)
            .map(|h| IdentityFailure::Idempotent { h }),
        commutative: (0..h)
            .flat_map(|g| (0..h).map(move |x| (g, x)))
            .find(|&(g, x)| alg.add(g, x) != alg.add(x, g))
            .map(|(g, h)| IdentityFailure::Commutative { g, h }),
        identity2: None,
        identity3: None,
    };
    let om = match omega(alg) {
        Ok(om) => om,
        Err(v) => {
            report.identity2 = Some(IdentityFailure::Aperiodic { v });
            return report;
        }
    };
    report.omega = Some(om.exponent);
    let pw = &om.power;

    let (count, fail) = scan(v, jobs, |a| {
        let row = alg.compose_row(a);
        let mut first = None;
        for b in 0..v {
            let x = pw[row[b] as usize];
            let rhs = alg.compose(alg.compose(x, b), x);
            if first.is_none() && x != rhs {
                first = Some(b);
            }
        }
        (v as u64, first)
    });
    report.da_pairs_checked = count;
    report.identity2 = fail.map(|(v, w)| IdentityFailure::Da { v, w });

    let pairs = dashv.sorted_pairs();
    let (count, fail) = scan(pairs.len(), jobs, |i| {
        let (u1, u2) = pairs[i];
        let (r1, r2) = (alg.compose_row(u1), alg.compose_row(u2));
        let mut first = None;
        for (j, &(w1, w2)) in pairs.iter().enumerate() {
            let a = pw[r1[w1] as usize];
            let b = pw[r2[w2] as usize];
            let lhs = alg.compose(a, b);
            let rhs = alg.compose(alg.compose(alg.compose(a, u1), w2), b);
            if first.is_none() && lhs != rhs {
                first = Some(j);
            }
        }
        (pairs.len() as u64, first)
    });
    report.special_pairs_checked = count;
    report.identity3 = fail.map(|(i, j)| {
        let ((u1, u2), (w1, w2)) = (pairs[i], pairs[j]);
        IdentityFailure::Special { u1, u2, w1, w2 }
    });
    report
}
