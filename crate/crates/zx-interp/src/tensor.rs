//! Sparse tensors over bit-indexed legs, and greedy network contraction.

use std::collections::HashMap;

use crate::ring::Entry;
use crate::InterpError;

/// Bit `k` of a key is the value of leg `legs[k]`.
#[derive(Clone, Debug)]
pub(crate) struct Tensor<T> {
    pub legs: Vec<usize>,
    pub data: HashMap<u64, T>,
}

fn extract(key: u64, positions: &[usize]) -> u64 {
    positions.iter().enumerate().fold(0, |acc, (k, &p)| acc | (((key >> p) & 1) << k))
}

fn insert<T: Entry>(data: &mut HashMap<u64, T>, key: u64, value: T) {
    match data.get_mut(&key) {
        Some(v) => v.add_assign(&value),
        None => {
            data.insert(key, value);
        }
    }
}

fn prune<T: Entry>(mut data: HashMap<u64, T>) -> HashMap<u64, T> {
    data.retain(|_, v| !v.is_zero());
    data
}

impl<T: Entry> Tensor<T> {
    /// Sum over every leg label that occurs twice in this tensor.
    fn trace_loops(self) -> Self {
        let mut pairs = Vec::new();
        let mut keep = Vec::new();
        for (p, l) in self.legs.iter().enumerate() {
            match self.legs.iter().position(|x| x == l) {
                Some(first) if first != p => pairs.push((first, p)),
                _ if self.legs.iter().skip(p + 1).any(|x| x == l) => {}
                _ => keep.push(p),
            }
        }
        if pairs.is_empty() {
            return self;
        }
        let mut data = HashMap::new();
        for (k, v) in self.data {
            if pairs.iter().all(|&(a, b)| (k >> a) & 1 == (k >> b) & 1) {
                insert(&mut data, extract(k, &keep), v);
            }
        }
        Tensor { legs: keep.iter().map(|&p| self.legs[p]).collect(), data: prune(data) }
    }

    fn contract(&self, other: &Self) -> Self {
        let shared: Vec<usize> = self.legs.iter().copied().filter(|l| other.legs.contains(l)).collect();
        let pos = |legs: &[usize], l: usize| legs.iter().position(|&x| x == l).expect("shared leg");
        let shared_a: Vec<usize> = shared.iter().map(|&l| pos(&self.legs, l)).collect();
        let shared_b: Vec<usize> = shared.iter().map(|&l| pos(&other.legs, l)).collect();
        let rest_a: Vec<usize> = (0..self.legs.len()).filter(|p| !shared_a.contains(p)).collect();
        let rest_b: Vec<usize> = (0..other.legs.len()).filter(|p| !shared_b.contains(p)).collect();
        let mut index: HashMap<u64, Vec<(u64, &T)>> = HashMap::new();
        for (k, v) in &other.data {
            index.entry(extract(*k, &shared_b)).or_default().push((extract(*k, &rest_b), v));
        }
        let shift = rest_a.len();
        let mut data = HashMap::new();
        for (k, va) in &self.data {
            if let Some(matches) = index.get(&extract(*k, &shared_a)) {
                let ra = extract(*k, &rest_a);
                for (rb, vb) in matches {
                    insert(&mut data, ra | (rb << shift), va.mul(vb));
                }
            }
        }
        let legs = rest_a.iter().map(|&p| self.legs[p]).chain(rest_b.iter().map(|&p| other.legs[p])).collect();
        Tensor { legs, data: prune(data) }
    }

    /// Reorder legs to `order`, which must be a permutation of `self.legs`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let positions: Vec<usize> =
            order.iter().map(|l| self.legs.iter().position(|x| x == l).expect("leg present")).collect();
        let data = self.data.iter().map(|(k, v)| (extract(*k, &positions), v.clone())).collect();
        Tensor { legs: order.to_vec(), data }
    }
}

fn result_rank(a: &[usize], b: &[usize]) -> (usize, bool) {
    let shared = a.iter().filter(|l| b.contains(l)).count();
    (a.len() + b.len() - 2 * shared, shared > 0)
}

/// Contract a network in which every leg label occurs at most twice.
/// Labels occurring once stay open. Pairs are chosen greedily by the rank
/// of the result, connected pairs first; an intermediate above `cap` legs
/// aborts with a resource error.
pub(crate) fn contract_network<T: Entry>(
    tensors: Vec<Tensor<T>>,
    one: T,
    cap: usize,
) -> Result<Tensor<T>, InterpError> {
    let mut pool: Vec<Tensor<T>> = Vec::with_capacity(tensors.len());
    for t in tensors {
        if t.legs.len() > cap {
            return Err(InterpError::Resource { rank: t.legs.len(), limit: cap });
        }
        pool.push(t.trace_loops());
    }
    if pool.is_empty() {
        return Ok(Tensor { legs: Vec::new(), data: HashMap::from([(0, one)]) });
    }
    while pool.len() > 1 {
        let mut best: Option<(bool, usize, usize, usize, usize)> = None;
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                let (rank, connected) = result_rank(&pool[i].legs, &pool[j].legs);
                let work = pool[i].data.len().saturating_mul(pool[j].data.len());
                let cand = (!connected, rank, work, i, j);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        let (_, rank, _, i, j) = best.expect("two tensors");
        if rank > cap {
            return Err(InterpError::Resource { rank, limit: cap });
        }
        let b = pool.swap_remove(j);
        let a = pool.swap_remove(i);
        pool.push(a.contract(&b));
    }
    Ok(pool.pop().expect("one tensor"))
}
