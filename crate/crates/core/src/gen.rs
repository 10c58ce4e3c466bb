//! Seeded random instance generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceFile};
use crate::jobset::MAX_JOBS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Each index pair `i < j` gets the edge `i -> j` with probability `density`.
    RandomDag,
    /// Each consecutive pair `i, i+1` gets the edge `i -> i+1` with probability `density`.
    ChainMix,
    /// `floor(density * n / 2)` disjoint comparable pairs on random jobs.
    AntichainPlusMatching,
}

impl Model {
    pub const ALL: [Model; 3] = [
        Model::RandomDag,
        Model::ChainMix,
        Model::AntichainPlusMatching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::RandomDag => "random-dag",
            Model::ChainMix => "chain-mix",
            Model::AntichainPlusMatching => "antichain-plus-matching",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown model {s:?}")))
    }
}

/// Parameters for [`generate`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    pub model: Model,
    pub density: f64,
    /// Times are drawn uniformly from `1..=tmax` (all zero if `tmax` is 0).
    pub tmax: u64,
    pub seed: u64,
}

/// Raw (unclosed) instance description for the parameters.
pub fn generate_file(p: &GenParams) -> Result<InstanceFile> {
    if !(0.0..=1.0).contains(&p.density) {
        return Err(Error::InvalidConfig(format!(
            "density {} outside [0, 1]",
            p.density
        )));
    }
    if p.n > MAX_JOBS {
        return Err(Error::InstanceTooLarge {
            n: p.n,
            limit: MAX_JOBS,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let times: Vec<u64> = (0..p.n)
        .map(|_| {
            if p.tmax == 0 {
                0
            } else {
                rng.random_range(1..=p.tmax)
            }
        })
        .collect();
    let mut edges = Vec::new();
    match p.model {
        Model::RandomDag => {
            for i in 0..p.n {
                for j in i + 1..p.n {
                    if rng.random_bool(p.density) {
                        edges.push([i, j]);
                    }
                }
            }
        }
        Model::ChainMix => {
            for i in 1..p.n {
                if rng.random_bool(p.density) {
                    edges.push([i - 1, i]);
                }
            }
        }
        Model::AntichainPlusMatching => {
            let k = (p.density * p.n as f64 / 2.0).floor() as usize;
            let mut jobs: Vec<usize> = (0..p.n).collect();
            jobs.shuffle(&mut rng);
            for pair in jobs.chunks_exact(2).take(k) {
                edges.push([pair[0], pair[1]]);
            }
        }
    }
    Ok(InstanceFile {
        n: p.n,
        times,
        precedences: edges,
    })
}

/// A random instance with its precedence relation closed.
pub fn generate(p: &GenParams) -> Result<Instance> {
    generate_file(p)?.to_instance()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(model: Model, density: f64, seed: u64) -> GenParams {
        GenParams {
            n: 6,
            model,
            density,
            tmax: 9,
            seed,
        }
    }

    #[test]
    fn model_examples() {
        let empty = generate(&GenParams {
            n: 4,
            ..params(Model::AntichainPlusMatching, 0.0, 1)
        })
        .unwrap();
        assert!(empty.order().pairs().is_empty());

        let chain = generate(&GenParams {
            n: 4,
            ..params(Model::ChainMix, 1.0, 1)
        })
        .unwrap();
        assert_eq!(chain.order().pairs().len(), 6);

        let matched = generate(&params(Model::AntichainPlusMatching, 1.0, 3)).unwrap();
        assert_eq!(matched.order().pairs().len(), 3);
    }

    #[test]
    fn same_seed_same_instance() {
        for model in Model::ALL {
            let a = generate_file(&params(model, 0.5, 42)).unwrap();
            let b = generate_file(&params(model, 0.5, 42)).unwrap();
            assert_eq!(a.to_json(), b.to_json());
            assert!(a.times.iter().all(|&t| (1..=9).contains(&t)));
        }
    }

    #[test]
    fn rejects_bad_density() {
        assert!(generate(&params(Model::RandomDag, 1.5, 0)).is_err());
        assert!("nope".parse::<Model>().is_err());
        assert_eq!("chain-mix".parse::<Model>().unwrap(), Model::ChainMix);
    }
}
