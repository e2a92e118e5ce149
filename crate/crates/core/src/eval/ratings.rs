//! Relative ratings from round-robin results via a logistic
//! (Bradley-Terry/Elo) maximum-likelihood fit.

use crate::error::Result;

const ELO_SCALE: f64 = 400.0;

#[derive(Debug, Clone)]
pub struct RatingReport {
    pub names: Vec<String>,
    /// Rating per agent; the anchor (first agent) is fixed at 0.
    pub ratings: Vec<f64>,
    /// Connected components of the result graph (ratings are only
    /// comparable within a component).
    pub components: Vec<usize>,
    pub warnings: Vec<String>,
}

fn expected_score(delta: f64) -> f64 {
    1.0 / (1.0 + 10f64.powf(-delta / ELO_SCALE))
}

/// Fit ratings to a score matrix: `score[i][j]` is the fraction of points
/// agent i took from agent j and `games[i][j]` the number of games between
/// them (symmetric; the diagonal is ignored).
pub fn relative_ratings(
    names: &[String],
    score: &[Vec<f64>],
    games: &[Vec<u64>],
) -> Result<RatingReport> {
    let n = names.len();
    let mut warnings = Vec::new();

    // Connected components over the played-games graph.
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = next;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && comp[j] == usize::MAX && games[i][j] > 0 {
                    comp[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    if next > 1 {
        warnings.push(format!(
            "result graph is disconnected ({next} components); ratings are per component"
        ));
    }

    // Gradient ascent on the Bernoulli log-likelihood, anchoring the first
    // agent of every component at 0.
    let mut r = vec![0.0f64; n];
    let mut anchor = vec![false; n];
    for c in 0..next {
        if let Some(first) = (0..n).find(|&i| comp[i] == c) {
            anchor[first] = true;
        }
    }
    for _ in 0..50_000 {
        let mut grad = vec![0.0f64; n];
        let mut weight = vec![0.0f64; n];
        for i in 0..n {
            for j in 0..n {
                if i == j || games[i][j] == 0 {
                    continue;
                }
                let g = games[i][j] as f64;
                let e = expected_score(r[i] - r[j]);
                grad[i] += g * (score[i][j] - e);
                weight[i] += g;
            }
        }
        let mut max_step = 0.0f64;
        for i in 0..n {
            if anchor[i] || weight[i] == 0.0 {
                continue;
            }
            let step = (400.0 * grad[i] / weight[i]).clamp(-50.0, 50.0);
            r[i] += step;
            max_step = max_step.max(step.abs());
        }
        if max_step < 1e-9 {
            break;
        }
    }
    // Clamp runaway ratings from 100%/0% scores.
    for v in r.iter_mut() {
        *v = v.clamp(-4000.0, 4000.0);
    }

    Ok(RatingReport {
        names: names.to_vec(),
        ratings: r,
        components: comp,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fit(scores: &[[f64; 2]; 2], games: u64) -> Vec<f64> {
        let names = vec!["a".to_string(), "b".to_string()];
        let score = vec![scores[0].to_vec(), scores[1].to_vec()];
        let g = vec![vec![0, games], vec![games, 0]];
        relative_ratings(&names, &score, &g).unwrap().ratings
    }

    #[test]
    fn even_score_gives_equal_ratings() {
        let r = fit(&[[0.0, 0.5], [0.5, 0.0]], 100);
        assert!((r[0] - r[1]).abs() < 1e-6);
        assert_eq!(r[0], 0.0); // anchor
    }

    #[test]
    fn three_quarters_score_is_about_191_elo() {
        let r = fit(&[[0.0, 0.75], [0.25, 0.0]], 1000);
        let gap = r[1] - r[0];
        assert!((gap + 190.85).abs() < 2.0, "gap {gap}");
    }

    #[test]
    fn anchor_agent_is_exactly_zero() {
        let r = fit(&[[0.0, 0.9], [0.1, 0.0]], 100);
        assert_eq!(r[0], 0.0);
    }
}
