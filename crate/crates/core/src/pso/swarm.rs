use rand::Rng;
use serde::Serialize;

use super::PsoConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub best_position: Vec<f64>,
    pub best_fitness: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct SwarmOutcome {
    pub best_position: Vec<f64>,
    pub best_fitness: u64,
    /// Best fitness after initialization and after each generation.
    pub trace: Vec<u64>,
}

fn quantize(v: f64) -> f64 {
    (v * 10.0).round() / 10.0
}

/// Global-best PSO maximizing `eval`. Particle 0 starts at `base`; the rest
/// start uniformly within 15 points of it. Positions are kept in `[0, 100]`
/// on the 0.1 grid and passed through `repair` after every move. Personal
/// and global bests change only on strict improvement.
pub(crate) fn run(
    base: &[f64],
    config: &PsoConfig,
    rng: &mut impl Rng,
    mut eval: impl FnMut(&[f64]) -> u64,
    repair: impl Fn(&mut [f64]),
) -> SwarmOutcome {
    let dim = base.len();
    let vmax = config.v_max * 100.0;

    let mut swarm: Vec<Particle> = (0..config.swarm_size)
        .map(|i| {
            let mut position: Vec<f64> = if i == 0 {
                base.to_vec()
            } else {
                base.iter()
                    .map(|&b| {
                        let (lo, hi) = ((b - 15.0).max(0.0), (b + 15.0).min(100.0));
                        quantize(rng.random_range(lo..=hi))
                    })
                    .collect()
            };
            if i > 0 {
                repair(&mut position);
            }
            let best_fitness = eval(&position);
            Particle {
                velocity: vec![0.0; dim],
                best_position: position.clone(),
                position,
                best_fitness,
            }
        })
        .collect();

    let mut g = 0;
    for (i, p) in swarm.iter().enumerate() {
        if p.best_fitness > swarm[g].best_fitness {
            g = i;
        }
    }
    let mut gbest = swarm[g].best_position.clone();
    let mut gbest_fit = swarm[g].best_fitness;
    let mut trace = Vec::with_capacity(config.generations + 1);
    trace.push(gbest_fit);

    for _ in 0..config.generations {
        for p in swarm.iter_mut() {
            for d in 0..dim {
                let (r1, r2): (f64, f64) = (rng.random(), rng.random());
                let v = config.inertia * p.velocity[d]
                    + config.c1 * r1 * (p.best_position[d] - p.position[d])
                    + config.c2 * r2 * (gbest[d] - p.position[d]);
                p.velocity[d] = v.clamp(-vmax, vmax);
                p.position[d] = quantize((p.position[d] + p.velocity[d]).clamp(0.0, 100.0));
            }
            repair(&mut p.position);
            let f = eval(&p.position);
            if f > p.best_fitness {
                p.best_fitness = f;
                p.best_position.clone_from(&p.position);
            }
        }
        for p in &swarm {
            if p.best_fitness > gbest_fit {
                gbest_fit = p.best_fitness;
                gbest.clone_from(&p.best_position);
            }
        }
        trace.push(gbest_fit);
    }

    SwarmOutcome {
        best_position: gbest,
        best_fitness: gbest_fit,
        trace,
    }
}
