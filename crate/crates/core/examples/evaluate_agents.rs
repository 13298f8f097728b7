//! Score the built-in agents and an outside prediction set.

use std::collections::BTreeMap;

use pqa_core::dataset::{build_task, episode_id};
use pqa_core::eval::{score, Agent, PredictionSet};
use pqa_core::task::TaskId;
use pqa_core::taskgen::GenParams;

fn main() {
    let params = GenParams::default();
    let mut episodes = Vec::new();
    for task in TaskId::ALL {
        let (eps, _) = build_task(task, 40, 3, &params).expect("build");
        episodes.extend(eps.into_iter().enumerate().map(|(i, e)| (episode_id(task, i), e)));
    }

    for agent in [Agent::Oracle, Agent::Identity] {
        print!("{}", score(&episodes, &agent.run(&episodes)).table());
    }

    // An outside agent that only ever answers closure puzzles correctly.
    let predictions: BTreeMap<_, _> = episodes
        .iter()
        .filter(|(_, e)| e.task() == TaskId::T1)
        .map(|(id, e)| (id.clone(), e.test_answer.clone()))
        .collect();
    let external = PredictionSet {
        agent: "closure-only".into(),
        predictions,
    };
    let report = score(&episodes, &external);
    print!("{}", report.table());
}
