//! CONNECTIVITY with collocation via min-sum subset convolution.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::model::{ColorKind, Instance, MovementPlan, Solution};
use crate::properties::{Property, PropertyKind};

/// A function from subsets of `0..k` (bitmasks) to costs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFunction {
    pub k: usize,
    pub values: Vec<Cost>,
}

impl SubsetFunction {
    pub fn new(k: usize, values: Vec<Cost>) -> Result<SubsetFunction> {
        if values.len() != 1 << k {
            return Err(Error::InvalidInstance(format!("subset function over {k} elements needs {} values", 1u64 << k)));
        }
        Ok(SubsetFunction { k, values })
    }

    /// Zero on the empty set, infinite elsewhere.
    pub fn unit(k: usize) -> SubsetFunction {
        let mut values = vec![Cost::INF; 1 << k];
        values[0] = Cost::ZERO;
        SubsetFunction { k, values }
    }

    pub fn get(&self, s: usize) -> Cost {
        self.values[s]
    }
}

/// `h(S) = min over T ⊆ S of f(T) + g(S \ T)` by enumerating every split.
pub fn conv_naive(f: &SubsetFunction, g: &SubsetFunction) -> SubsetFunction {
    assert_eq!(f.k, g.k, "subset functions over different ground sets");
    let values = (0..1usize << f.k)
        .map(|s| {
            let mut best = f.values[s] + g.values[0];
            let mut t = s;
            while t != 0 {
                t = (t - 1) & s;
                best = best.min(f.values[t] + g.values[s ^ t]);
            }
            best
        })
        .collect();
    SubsetFunction { k: f.k, values }
}

fn zeta(table: &mut [i128], k: usize, width: usize, sign: i128) {
    for bit in 0..k {
        for s in 0..1usize << k {
            if s >> bit & 1 == 1 {
                let (lo, hi) = table.split_at_mut(s * width);
                let src = &lo[(s ^ 1 << bit) * width..(s ^ 1 << bit) * width + width];
                for (d, x) in hi[..width].iter_mut().zip(src) {
                    *d += sign * x;
                }
            }
        }
    }
}

/// Same result as [`conv_naive`], computed with ranked zeta/Möbius transforms over
/// polynomials whose exponents encode the values.
pub fn conv_fast(f: &SubsetFunction, g: &SubsetFunction, m: u64) -> Result<SubsetFunction> {
    assert_eq!(f.k, g.k, "subset functions over different ground sets");
    let k = f.k;
    for &v in f.values.iter().chain(&g.values) {
        if let Some(x) = v.finite() {
            if x > m {
                return Err(Error::ValueOverM { value: x, bound: m });
            }
        }
    }
    let size = 1usize << k;
    let w = m as usize + 1;
    let w2 = 2 * w - 1;
    let memory = (k + 1).saturating_mul(size).saturating_mul(2 * w + w2);
    if memory > 1 << 27 {
        return Err(Error::LimitExceeded { size: memory as u128, limit: 1 << 27 });
    }
    let ranked = |h: &SubsetFunction| -> Vec<Vec<i128>> {
        (0..=k)
            .map(|r| {
                let mut t = vec![0i128; size * w];
                for s in (0..size).filter(|s| s.count_ones() as usize == r) {
                    if let Some(x) = h.values[s].finite() {
                        t[s * w + x as usize] = 1;
                    }
                }
                zeta(&mut t, k, w, 1);
                t
            })
            .collect()
    };
    let fr = ranked(f);
    let gr = ranked(g);
    let mut values = vec![Cost::INF; size];
    for r in 0..=k {
        let mut h = vec![0i128; size * w2];
        for s in 0..size {
            let out = &mut h[s * w2..(s + 1) * w2];
            for a in 0..=r {
                let (fa, gb) = (&fr[a][s * w..(s + 1) * w], &gr[r - a][s * w..(s + 1) * w]);
                for (i, &x) in fa.iter().enumerate() {
                    if x != 0 {
                        for (j, &y) in gb.iter().enumerate() {
                            out[i + j] += x * y;
                        }
                    }
                }
            }
        }
        zeta(&mut h, k, w2, -1);
        for s in (0..size).filter(|s| s.count_ones() as usize == r) {
            if let Some(d) = h[s * w2..(s + 1) * w2].iter().position(|&c| c > 0) {
                values[s] = Cost::new(d as u64);
            }
        }
    }
    Ok(SubsetFunction { k, values })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvMode {
    /// Pick by estimated work.
    Auto,
    Naive,
    Fast,
}

/// Value type of the DP tables; clamped entries mean "worse than the upper bound".
trait Val: Copy + Ord + std::ops::Add<Output = Self> {
    const INF: Self;
    fn of(x: u64) -> Self;
    fn get(self) -> u64;
}

impl Val for i32 {
    const INF: i32 = 0x3FFF_FFFF;
    fn of(x: u64) -> i32 {
        x as i32
    }
    fn get(self) -> u64 {
        self as u64
    }
}

impl Val for i64 {
    const INF: i64 = 1 << 62;
    fn of(x: u64) -> i64 {
        x as i64
    }
    fn get(self) -> u64 {
        self as u64
    }
}

/// Final tables `f_v(S)` for all vertices and pebble subsets (`S` over main pebbles).
pub struct ConnectivityDp {
    n: usize,
    k: usize,
    f: Vec<u64>,
    fp: Vec<u64>,
    base: Vec<Vec<Cost>>,
    adj: Vec<Vec<usize>>,
    mains: Vec<usize>,
}

const DP_INF: u64 = u64::MAX;

impl ConnectivityDp {
    fn at(&self, s: usize, v: usize) -> usize {
        s * self.n + v
    }

    /// `f_v(S)`: cheapest way to move the pebbles of `S` onto a connected set containing `v`,
    /// with a pebble on `v`. Entries above the instance upper bound read as infinite.
    pub fn f(&self, v: usize, s: usize) -> Cost {
        let x = self.f[self.at(s, v)];
        if x == DP_INF { Cost::INF } else { Cost::new(x) }
    }

    /// `f_{v,i}(S)`: `f_v(S)` if `|S| ≤ i`, else infinite.
    pub fn value(&self, v: usize, i: usize, s: usize) -> Cost {
        if s.count_ones() as usize > i { Cost::INF } else { self.f(v, s) }
    }

    /// `f'_v(S)`: best over neighbors `u` of `v` of `f_u(S)`.
    pub fn f_prime(&self, v: usize, s: usize) -> Cost {
        let x = self.fp[self.at(s, v)];
        if x == DP_INF { Cost::INF } else { Cost::new(x) }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Best root vertex and total cost, ties toward the smaller vertex.
    pub fn optimum(&self) -> Option<(Cost, usize)> {
        let full = (1 << self.k) - 1;
        (0..self.n).map(|v| (self.f(v, full), v)).filter(|(c, _)| c.is_finite()).min()
    }

    fn base(&self, v: usize, s: usize) -> Cost {
        (0..self.k).filter(|&b| s >> b & 1 == 1).map(|b| self.base[b][v]).sum()
    }

    /// Writes targets for the pebbles of `S` realizing `f_v(S)`.
    fn place(&self, v: usize, s: usize, targets: &mut [usize]) {
        let want = self.f(v, s);
        if self.base(v, s) == want {
            for b in (0..self.k).filter(|&b| s >> b & 1 == 1) {
                targets[self.mains[b]] = v;
            }
            return;
        }
        let mut t = 1;
        while t < s {
            if t & s == t {
                let split = self.f_prime(v, t) + self.f(v, s ^ t);
                if split == want {
                    let fp = self.f_prime(v, t);
                    let u = *self.adj[v].iter().find(|&&u| self.f(u, t) == fp).expect("neighbor realizing f'");
                    self.place(u, t, targets);
                    self.place(v, s ^ t, targets);
                    return;
                }
            }
            t += 1;
        }
        unreachable!("no split realizes a finite table entry");
    }
}

fn run_naive<V: Val>(n: usize, k: usize, adj: &[Vec<usize>], base: &[Vec<Cost>], ub: u64, by_size: &[Vec<usize>]) -> (Vec<V>, Vec<V>) {
    let size = 1usize << k;
    let clamp = |x: u64| if x > ub { V::INF } else { V::of(x) };
    let mut f = vec![V::INF; size * n];
    let mut fp = vec![V::INF; size * n];
    // Whether a row holds any finite entry; splits through an all-infinite row are skipped.
    let mut f_any = vec![false; size];
    let mut fp_any = vec![false; size];
    f[..n].fill(V::of(0));
    f_any[0] = true;
    for s in 1..size {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let mut any = false;
        for v in 0..n {
            let prev = f[rest * n + v];
            let c = base[low][v];
            let x = match (prev == V::INF, c.finite()) {
                (false, Some(c)) => clamp(prev.get() + c),
                _ => V::INF,
            };
            any |= x != V::INF;
            f[s * n + v] = x;
        }
        f_any[s] = any;
    }
    let mut acc = vec![V::INF; n];
    for (i, masks) in by_size.iter().enumerate().skip(1) {
        if i >= 2 {
            for &s in masks {
                acc.copy_from_slice(&f[s * n..(s + 1) * n]);
                let mut touched = false;
                let mut t = (s - 1) & s;
                while t != 0 {
                    if fp_any[t] && f_any[s ^ t] {
                        touched = true;
                        let a = &fp[t * n..(t + 1) * n];
                        let b = &f[(s ^ t) * n..((s ^ t) + 1) * n];
                        for ((x, &y), &z) in acc.iter_mut().zip(a).zip(b) {
                            *x = (*x).min(y + z);
                        }
                    }
                    t = (t - 1) & s;
                }
                if touched {
                    let mut any = false;
                    for (d, &x) in f[s * n..(s + 1) * n].iter_mut().zip(&acc) {
                        *d = if x.get() > ub { V::INF } else { x };
                        any |= *d != V::INF;
                    }
                    f_any[s] = any;
                }
            }
        }
        for &s in masks {
            if !f_any[s] {
                continue;
            }
            let mut any = false;
            for v in 0..n {
                let x = adj[v].iter().map(|&u| f[s * n + u]).min().unwrap_or(V::INF);
                any |= x != V::INF;
                fp[s * n + v] = x;
            }
            fp_any[s] = any;
        }
    }
    (f, fp)
}

fn run_fast(n: usize, k: usize, adj: &[Vec<usize>], base: &[Vec<Cost>], ub: u64, by_size: &[Vec<usize>]) -> Result<(Vec<u64>, Vec<u64>)> {
    let size = 1usize << k;
    let mut f = vec![DP_INF; size * n];
    let mut fp = vec![DP_INF; size * n];
    let clamp = |c: Cost| c.finite().filter(|&x| x <= ub).unwrap_or(DP_INF);
    for v in 0..n {
        f[v] = 0;
    }
    for s in 1..size {
        for v in 0..n {
            let c: Cost = (0..k).filter(|&b| s >> b & 1 == 1).map(|b| base[b][v]).sum();
            f[s * n + v] = clamp(c);
        }
    }
    let read = |x: u64| if x == DP_INF { Cost::INF } else { Cost::new(x) };
    for (i, masks) in by_size.iter().enumerate().skip(1) {
        if i >= 2 {
            let mut updates = Vec::new();
            for v in 0..n {
                let mut a = vec![Cost::INF; size];
                let mut b = vec![Cost::INF; size];
                for t in 1..size {
                    if (t.count_ones() as usize) < i {
                        a[t] = read(fp[t * n + v]);
                        b[t] = read(f[t * n + v]);
                    }
                }
                let h = conv_fast(&SubsetFunction { k, values: a }, &SubsetFunction { k, values: b }, ub)?;
                for &s in masks {
                    updates.push((s * n + v, h.values[s]));
                }
            }
            for (idx, c) in updates {
                f[idx] = f[idx].min(clamp(c));
            }
        }
        for &s in masks {
            for v in 0..n {
                fp[s * n + v] = adj[v].iter().map(|&u| f[s * n + u]).min().unwrap_or(DP_INF);
            }
        }
    }
    Ok((f, fp))
}

fn check_problem(instance: &Instance) -> Result<()> {
    let prop = Property::for_instance(instance)?;
    if prop.kind != (PropertyKind::Connectivity { collocated: true }) {
        return Err(Error::WrongProblem(format!(
            "convolution solver handles connectivity with collocation, not {:?}",
            prop.kind
        )));
    }
    if !instance.pebbles_of_kind(ColorKind::Obnoxious).is_empty() {
        return Err(Error::WrongProblem("convolution solver does not handle obnoxious pebbles".into()));
    }
    if instance.l < instance.k() {
        return Err(Error::WrongProblem(format!(
            "convolution solver needs l ≥ k (l = {}, k = {})",
            instance.l,
            instance.k()
        )));
    }
    Ok(())
}

/// Builds the full DP table.
pub fn connectivity_dp(instance: &Instance, mode: ConvMode) -> Result<ConnectivityDp> {
    connectivity_dp_bounded(instance, mode, None)
}

/// Builds the DP table with every entry above `bound` (or a trivial upper bound on the
/// optimum, if smaller) treated as infinite. Any solution of cost at most the bound survives.
pub fn connectivity_dp_bounded(instance: &Instance, mode: ConvMode, bound: Option<u64>) -> Result<ConnectivityDp> {
    check_problem(instance)?;
    let n = instance.n();
    let mains = instance.pebbles_of_kind(ColorKind::Main);
    let k = mains.len();
    if k > 24 {
        return Err(Error::TooLarge { n: k, limit: 24 });
    }
    let cells = (n as u128) << k;
    if cells > 1 << 28 {
        return Err(Error::LimitExceeded { size: cells, limit: 1 << 28 });
    }
    let base: Vec<Vec<Cost>> = mains.iter().map(|&p| instance.cost_row(p).to_vec()).collect();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| instance.graph.neighbors(v).to_vec()).collect();
    let common = (0..n).map(|v| base.iter().map(|row| row[v]).sum::<Cost>()).min().unwrap_or(Cost::INF);
    let spread: Cost = base.iter().map(|row| row.iter().copied().filter(|c| c.is_finite()).max().unwrap_or(Cost::INF)).sum();
    let ub = common.min(spread).finite().unwrap_or(0);
    let ub = bound.map_or(ub, |b| b.min(ub));
    let mut by_size = vec![Vec::new(); k + 1];
    for s in 0..1usize << k {
        by_size[s.count_ones() as usize].push(s);
    }
    let use_fast = match mode {
        ConvMode::Fast => true,
        ConvMode::Auto => {
            let m = ub as f64 + 1.0;
            let naive = 3f64.powi(k as i32);
            let fast = (k * k) as f64 * 2f64.powi(k as i32) * m * m * k as f64;
            ub <= 1 << 16 && k > 6 && fast < naive
        }
        ConvMode::Naive => false,
    };
    let widen = |x: Vec<i32>| x.into_iter().map(|v| if v == i32::INF { DP_INF } else { v as u64 }).collect();
    let widen64 = |x: Vec<i64>| x.into_iter().map(|v| if v == i64::INF { DP_INF } else { v as u64 }).collect();
    let (f, fp): (Vec<u64>, Vec<u64>) = if use_fast {
        run_fast(n, k, &adj, &base, ub, &by_size)?
    } else if ub < 1 << 29 {
        let (f, fp) = run_naive::<i32>(n, k, &adj, &base, ub, &by_size);
        (widen(f), widen(fp))
    } else {
        let (f, fp) = run_naive::<i64>(n, k, &adj, &base, ub, &by_size);
        (widen64(f), widen64(fp))
    };
    Ok(ConnectivityDp { n, k, f, fp, base, adj, mains })
}

/// Exact optimum for connectivity with collocation.
pub fn connectivity_solve(instance: &Instance) -> Result<Solution> {
    connectivity_solve_with(instance, ConvMode::Auto)
}

pub fn connectivity_solve_with(instance: &Instance, mode: ConvMode) -> Result<Solution> {
    let dp = connectivity_dp(instance, mode)?;
    let (main_cost, root) = dp.optimum().ok_or(Error::Infeasible)?;
    let mut targets: Vec<usize> = instance.pebbles.iter().map(|p| p.at).collect();
    let mut extra = Cost::ZERO;
    for p in instance.pebbles_of_kind(ColorKind::Facility) {
        let row = instance.cost_row(p);
        let (c, v) = (0..instance.n()).map(|v| (row[v], v)).min().expect("nonempty graph");
        targets[p] = v;
        extra = extra + c;
    }
    if extra.is_inf() {
        return Err(Error::Infeasible);
    }
    if dp.k() > 0 {
        dp.place(root, (1 << dp.k()) - 1, &mut targets);
    }
    let cost = main_cost + extra;
    let mut witness: Vec<usize> = dp.mains.iter().map(|&p| targets[p]).collect();
    witness.sort_unstable();
    witness.dedup();
    if let Some(b) = instance.budget {
        if cost > Cost::new(b) {
            return Err(Error::BudgetExceeded { optimum: cost.raw(), budget: b });
        }
    }
    Ok(Solution { plan: MovementPlan { targets }, witness, cost })
}
