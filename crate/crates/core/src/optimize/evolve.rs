//! Generational genetic algorithm on N-bit membership vectors.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cost::Score;
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

use super::rank::Ranking;
use super::{unit_rng, Evaluator, Executor, OptimizerKind, SearchResult, Sequential, Trace};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaParams {
    pub population_size: usize,
    pub generations: usize,
    /// Per-bit flip probability; `None` means `1/N`.
    pub mutation_rate: Option<f64>,
    pub crossover_rate: f64,
    pub tournament_size: usize,
    /// Best defined individuals copied unchanged into the next generation.
    pub elitism: usize,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population_size: 40,
            generations: 100,
            mutation_rate: None,
            crossover_rate: 0.9,
            tournament_size: 3,
            elitism: 1,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::param("population size", "must be at least 2"));
        }
        if self.generations < 1 {
            return Err(Error::param("generations", "must be at least 1"));
        }
        if let Some(m) = self.mutation_rate {
            if !(m > 0.0 && m <= 1.0) {
                return Err(Error::param("mutation rate", format!("{m} outside (0, 1]")));
            }
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::param(
                "crossover rate",
                format!("{} outside [0, 1]", self.crossover_rate),
            ));
        }
        if self.tournament_size < 2 {
            return Err(Error::param("tournament size", "must be at least 2"));
        }
        if self.elitism >= self.population_size {
            return Err(Error::param(
                "elitism count",
                format!("{} must be below the population size", self.elitism),
            ));
        }
        Ok(())
    }
}

/// Defined scores beat undefined ones; otherwise higher value wins.
fn fitness_cmp(a: &Score, b: &Score) -> Ordering {
    match (a.value, b.value) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        (Some(_), None) => Ordering::Greater,
        (None, Some(_)) => Ordering::Less,
        (None, None) => Ordering::Equal,
    }
}

fn random_individual(rng: &mut ChaCha8Rng, n: usize) -> NodeSet {
    let mut set = NodeSet::new(n);
    for v in 0..n {
        if rng.gen_bool(0.5) {
            set.insert(v);
        }
    }
    set
}

fn repair(rng: &mut ChaCha8Rng, set: &mut NodeSet) {
    if set.is_empty() {
        let v = rng.gen_range(0..set.universe());
        set.insert(v);
    }
}

pub fn evolve(
    eval: &Evaluator<'_>,
    params: &GaParams,
    rng_seed: u64,
    top_k: usize,
) -> Result<SearchResult> {
    evolve_with(eval, params, rng_seed, top_k, &Sequential)
}

/// Fitness evaluations run through `exec`; all random draws come from a
/// single stream, so results do not depend on the executor.
pub fn evolve_with<E: Executor>(
    eval: &Evaluator<'_>,
    params: &GaParams,
    rng_seed: u64,
    top_k: usize,
    exec: &E,
) -> Result<SearchResult> {
    params.validate()?;
    let mut rng = unit_rng(rng_seed, 0);
    let n = eval.node_count();
    let population = (0..params.population_size)
        .map(|_| {
            let mut ind = random_individual(&mut rng, n);
            repair(&mut rng, &mut ind);
            ind
        })
        .collect();
    run(eval, params, rng_seed, rng, population, top_k, exec)
}

/// Starts from a caller-supplied population of `params.population_size`
/// individuals over the evaluator's node universe.
pub fn evolve_from_population<E: Executor>(
    eval: &Evaluator<'_>,
    params: &GaParams,
    rng_seed: u64,
    top_k: usize,
    mut population: Vec<NodeSet>,
    exec: &E,
) -> Result<SearchResult> {
    params.validate()?;
    if population.len() != params.population_size {
        return Err(Error::param(
            "initial population",
            format!("{} individuals, expected {}", population.len(), params.population_size),
        ));
    }
    if population.iter().any(|p| p.universe() != eval.node_count()) {
        return Err(Error::param("initial population", "universe does not match graph"));
    }
    let mut rng = unit_rng(rng_seed, 0);
    for ind in &mut population {
        repair(&mut rng, ind);
    }
    run(eval, params, rng_seed, rng, population, top_k, exec)
}

fn evaluate_all<E: Executor>(
    eval: &Evaluator<'_>,
    individuals: &[NodeSet],
    exec: &E,
) -> Result<Vec<Score>> {
    exec.map(individuals.len(), |i| eval.evaluate(&individuals[i]))
        .into_iter()
        .collect()
}

fn tournament(rng: &mut ChaCha8Rng, scores: &[Score], size: usize) -> usize {
    let mut best = rng.gen_range(0..scores.len());
    for _ in 1..size {
        let challenger = rng.gen_range(0..scores.len());
        if fitness_cmp(&scores[challenger], &scores[best]) == Ordering::Greater {
            best = challenger;
        }
    }
    best
}

fn run<E: Executor>(
    eval: &Evaluator<'_>,
    params: &GaParams,
    rng_seed: u64,
    mut rng: ChaCha8Rng,
    mut population: Vec<NodeSet>,
    top_k: usize,
    exec: &E,
) -> Result<SearchResult> {
    let n = eval.node_count();
    let mutation_rate = params.mutation_rate.unwrap_or(1.0 / n as f64);
    let mut ranking = Ranking::new(top_k);
    let mut trace = Trace::default();

    let mut scores = evaluate_all(eval, &population, exec)?;
    let mut evaluations = population.len() as u64;
    for (ind, s) in population.iter().zip(&scores) {
        ranking.offer(eval, ind, s);
    }

    for _ in 0..params.generations {
        trace.iterations += 1;
        let mut order: Vec<usize> = (0..population.len()).collect();
        order.sort_by(|&a, &b| fitness_cmp(&scores[b], &scores[a]));

        let mut next: Vec<NodeSet> = Vec::with_capacity(population.len());
        let mut next_scores: Vec<Score> = Vec::with_capacity(population.len());
        for &i in order.iter().take(params.elitism) {
            if scores[i].is_defined() {
                next.push(population[i].clone());
                next_scores.push(scores[i]);
            }
        }
        let elites = next.len();

        while next.len() < population.len() {
            let first = tournament(&mut rng, &scores, params.tournament_size);
            let mut child = if rng.gen_bool(params.crossover_rate) {
                let second = tournament(&mut rng, &scores, params.tournament_size);
                let mut child = NodeSet::new(n);
                for v in 0..n {
                    let parent = if rng.gen_bool(0.5) { first } else { second };
                    if population[parent].contains(v) {
                        child.insert(v);
                    }
                }
                child
            } else {
                population[first].clone()
            };
            for v in 0..n {
                if rng.gen_bool(mutation_rate) {
                    child.toggle(v);
                }
            }
            repair(&mut rng, &mut child);
            next.push(child);
        }

        let fresh = evaluate_all(eval, &next[elites..], exec)?;
        evaluations += fresh.len() as u64;
        for (ind, s) in next[elites..].iter().zip(&fresh) {
            ranking.offer(eval, ind, s);
        }
        next_scores.extend(fresh);
        population = next;
        scores = next_scores;
    }

    let (best, ranked) = ranking.into_candidates(top_k)?;
    Ok(SearchResult {
        best,
        ranked,
        evaluations,
        rng_seed,
        optimizer: OptimizerKind::Genetic,
        trace,
    })
}
