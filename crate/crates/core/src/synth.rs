//! Seeded synthetic market-basket data.
//!
//! Item popularity follows a Zipf-like curve and every transaction is drawn
//! under one of several shopper profiles that boost a subset of items, which
//! gives the co-occurrence structure frequent-itemset mining needs. The
//! default shape is sized like a small grocery log: 169 items, 9835
//! transactions, about 4.4 items per basket.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::TransactionDatabase;

#[derive(Debug, Clone, PartialEq)]
pub struct BasketGenerator {
    pub n_transactions: usize,
    pub n_items: usize,
    /// Mean basket size; sizes are `1 + Geometric`, a long right tail like
    /// real shopping baskets.
    pub mean_basket: f64,
    pub zipf_exponent: f64,
    pub profiles: usize,
    pub items_per_profile: usize,
    pub profile_boost: f64,
    pub seed: u64,
}

impl Default for BasketGenerator {
    fn default() -> Self {
        Self {
            n_transactions: 9835,
            n_items: 169,
            mean_basket: 4.4,
            zipf_exponent: 1.0,
            profiles: 12,
            items_per_profile: 14,
            profile_boost: 6.0,
            seed: 0,
        }
    }
}

impl BasketGenerator {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn generate(&self) -> TransactionDatabase {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let n_items = self.n_items.max(1);
        let base: Vec<f64> = (0..n_items)
            .map(|i| 1.0 / ((i + 2) as f64).powf(self.zipf_exponent))
            .collect();
        let profiles: Vec<WeightedIndex<f64>> = (0..self.profiles.max(1))
            .map(|_| {
                let mut w = base.clone();
                for i in sample(&mut rng, n_items, self.items_per_profile.min(n_items)) {
                    w[i] *= self.profile_boost;
                }
                WeightedIndex::new(&w).expect("positive weights")
            })
            .collect();

        let extra = (self.mean_basket - 1.0).max(0.0);
        let names: Vec<String> = (0..n_items).map(|i| format!("item{i:03}")).collect();
        let rows: Vec<Vec<&str>> = (0..self.n_transactions)
            .map(|_| {
                let profile = &profiles[rng.gen_range(0..profiles.len())];
                let size = (1 + geometric(&mut rng, extra)).min(n_items);
                let mut chosen: Vec<usize> = Vec::with_capacity(size);
                while chosen.len() < size {
                    let i = profile.sample(&mut rng);
                    if !chosen.contains(&i) {
                        chosen.push(i);
                    }
                }
                chosen.into_iter().map(|i| names[i].as_str()).collect()
            })
            .collect();
        TransactionDatabase::from_transactions(rows)
    }
}

// Failures before the first success, by inversion; `mean` is the expectation.
fn geometric<R: Rng>(rng: &mut R, mean: f64) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    let q = mean / (1.0 + mean);
    let u: f64 = rng.gen();
    ((1.0 - u).ln() / q.ln()).floor() as usize
}
