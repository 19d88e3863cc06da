use std::cell::OnceCell;

use super::{ModelError, ModelId, ModelInput, ModelKind, ModelSpec, Scope};
use crate::scalar::count;
use crate::{Coalition, Scalar};

/// Ruling share plus the support it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct Share<T> {
    pub ruling: T,
    pub records: u64,
    pub users: u64,
}

/// Per-user tallies within one scope.
struct UserTable<T> {
    n: Vec<[u64; 2]>,
    sum: Vec<[T; 2]>,
    records: u64,
}

impl<T: Scalar> UserTable<T> {
    fn build(input: &ModelInput<T>, weights: Option<&[u32]>, scope: Scope) -> Self {
        let users = input.n_users();
        let mut n = vec![[0u64; 2]; users];
        let mut sum = vec![[T::zero(), T::zero()]; users];
        let mut records = 0;
        for (i, o) in input.observations.iter().enumerate() {
            if scope == Scope::Geo && !o.has_geodata() {
                continue;
            }
            let w = weights.map_or(1, |w| w[i]);
            if w == 0 {
                continue;
            }
            let u = o.user as usize;
            let y = o.coalition.index();
            n[u][y] += w as u64;
            let a = if w == 1 { o.allegiance.clone() } else { o.allegiance.clone() * count(w as u64) };
            sum[u][y] = sum[u][y].clone() + a;
            records += w as u64;
        }
        Self { n, sum, records }
    }

    fn mean(&self, u: usize, y: Coalition) -> Option<T> {
        let n = self.n[u][y.index()];
        (n > 0).then(|| self.sum[u][y.index()].clone() / count(n))
    }

    fn active_users(&self) -> u64 {
        self.n.iter().filter(|c| c[0] + c[1] > 0).count() as u64
    }
}

fn ratio<T: Scalar>(id: ModelId, ruling: T, opposition: T, what: &str) -> Result<T, ModelError> {
    let total = ruling.clone() + opposition;
    if total == T::zero() {
        Err(ModelError::Undefined { model: id, reason: what.to_string() })
    } else {
        Ok(ruling / total)
    }
}

/// Evaluates several models on one (possibly resampled) input, sharing the
/// per-user tallies between models of the same scope.
pub struct Evaluator<'a, T> {
    input: &'a ModelInput<T>,
    weights: Option<&'a [u32]>,
    tables: [OnceCell<UserTable<T>>; 2],
}

impl<'a, T: Scalar> Evaluator<'a, T> {
    /// `weights[i]` is the multiplicity of observation `i`; `None` means 1.
    pub fn new(input: &'a ModelInput<T>, weights: Option<&'a [u32]>) -> Self {
        if let Some(w) = weights {
            assert_eq!(w.len(), input.len(), "one weight per observation");
        }
        Self { input, weights, tables: [OnceCell::new(), OnceCell::new()] }
    }

    fn table(&self, scope: Scope) -> &UserTable<T> {
        let slot = match scope {
            Scope::Complete => 0,
            Scope::Geo => 1,
        };
        self.tables[slot].get_or_init(|| UserTable::build(self.input, self.weights, scope))
    }

    pub fn estimate(&self, spec: &ModelSpec<T>) -> Result<Share<T>, ModelError> {
        let id = spec.id;
        let table = self.table(id.scope());
        let undefined = |reason: &str| ModelError::Undefined { model: id, reason: reason.to_string() };
        let users = table.n.len();
        match id.kind() {
            ModelKind::VolumeTweets => {
                let (mut n0, mut n1) = (0u64, 0u64);
                for c in &table.n {
                    n0 += c[0];
                    n1 += c[1];
                }
                if n0 + n1 == 0 {
                    return Err(undefined("no records in scope"));
                }
                Ok(Share { ruling: count::<T>(n0) / count(n0 + n1), records: table.records, users: table.active_users() })
            }
            ModelKind::AllegianceTweets => {
                let (mut s0, mut s1) = (T::zero(), T::zero());
                for s in &table.sum {
                    s0 = s0 + s[0].clone();
                    s1 = s1 + s[1].clone();
                }
                Ok(Share {
                    ruling: ratio(id, s0, s1, "allegiance sums are zero")?,
                    records: table.records,
                    users: table.active_users(),
                })
            }
            ModelKind::VolumeUsers => {
                let (mut r, mut o) = (0u64, 0u64);
                for c in &table.n {
                    if c[0] > c[1] {
                        r += 1;
                    } else if c[1] > c[0] {
                        o += 1;
                    }
                }
                if r + o == 0 {
                    return Err(undefined("no user mentions one coalition more often"));
                }
                Ok(Share { ruling: count::<T>(r) / count(r + o), records: table.records, users: r + o })
            }
            ModelKind::AllegianceUsers => {
                let (mut t0, mut t1) = (T::zero(), T::zero());
                for u in 0..users {
                    if let Some(m) = table.mean(u, Coalition::Ruling) {
                        t0 = t0 + m;
                    }
                    if let Some(m) = table.mean(u, Coalition::Opposition) {
                        t1 = t1 + m;
                    }
                }
                Ok(Share {
                    ruling: ratio(id, t0, t1, "user mean allegiances are zero")?,
                    records: table.records,
                    users: table.active_users(),
                })
            }
            ModelKind::PositiveAllegiance => {
                let (mut r, mut o) = (0u64, 0u64);
                for u in 0..users {
                    let m0 = table.mean(u, Coalition::Ruling);
                    let m1 = table.mean(u, Coalition::Opposition);
                    match spec.bounds.classify(m0.as_ref(), m1.as_ref()) {
                        Some(Coalition::Ruling) => r += 1,
                        Some(Coalition::Opposition) => o += 1,
                        None => {}
                    }
                }
                if r + o == 0 {
                    return Err(undefined("no user is positive toward exactly one coalition"));
                }
                Ok(Share { ruling: count::<T>(r) / count(r + o), records: table.records, users: r + o })
            }
        }
    }
}

/// Evaluates one model.
pub fn estimate<T: Scalar>(
    spec: &ModelSpec<T>,
    input: &ModelInput<T>,
    weights: Option<&[u32]>,
) -> Result<Share<T>, ModelError> {
    Evaluator::new(input, weights).estimate(spec)
}

/// Evaluates several models on the same input, in the order given.
pub fn estimate_all<T: Scalar>(
    specs: &[ModelSpec<T>],
    input: &ModelInput<T>,
    weights: Option<&[u32]>,
) -> Vec<Result<Share<T>, ModelError>> {
    let ev = Evaluator::new(input, weights);
    specs.iter().map(|s| ev.estimate(s)).collect()
}
