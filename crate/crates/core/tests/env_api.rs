use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use pitch_core::env::{create_environment, EnvOptions};
use pitch_core::observation::{Observation, Representation};
use pitch_core::rewards::RewardKind;
use pitch_core::{Action, ContractError, DeterministicRng, EnvError, ACTION_COUNT};

fn random(rng: &mut DeterministicRng, n: usize) -> Vec<Action> {
    (0..n).map(|_| Action::ALL[(rng.next_u64() % ACTION_COUNT as u64) as usize]).collect()
}

#[test]
fn scoring_rewards_sum_to_goal_difference() {
    let options = EnvOptions { controlled_left: Some(0), controlled_right: Some(1), ..Default::default() };
    let mut env = create_environment("11_vs_11_easy", options).unwrap();
    env.reset().unwrap();
    let mut total = 0.0;
    let mut last = None;
    while !env.is_done() {
        let r = env.step(&[Action::Idle]).unwrap();
        total += r.rewards[0];
        last = Some(r.info);
    }
    let info = last.unwrap();
    assert_eq!(total, info.score_right as f64 - info.score_left as f64);
    assert_eq!(info.frame, 3000);
    assert_eq!(info.to_map()["end_reason"], "time");
}

#[test]
fn observation_count_follows_controlled_players() {
    let options = EnvOptions { stacking: 4, representation: Representation::Smm, ..Default::default() };
    let mut env = create_environment("3_vs_1_with_keeper", options).unwrap();
    let obs = env.reset().unwrap();
    assert_eq!(obs.len(), 3);
    assert_eq!(obs[0].shape(), vec![16, 72, 96]);
    let r = env.step(&[Action::Right, Action::Idle, Action::Idle]).unwrap();
    assert_eq!(r.observations.len(), 3);
    assert_eq!(r.rewards.len(), 3);
}

#[test]
fn contract_errors_surface() {
    let mut env = create_environment("empty_goal", EnvOptions::default()).unwrap();
    assert_eq!(env.step(&[Action::Idle]), Err(ContractError::NotReset));
    env.reset().unwrap();
    assert_eq!(env.step(&[]), Err(ContractError::ActionCount { expected: 1, got: 0 }));
    env.step(&[Action::Idle]).unwrap();
    assert_eq!(env.seed(3), Err(ContractError::SeedMidEpisode));
    let mut rng = DeterministicRng::new(0);
    while !env.is_done() {
        env.step(&random(&mut rng, 1)).unwrap();
    }
    assert_eq!(env.step(&[Action::Idle]), Err(ContractError::StepAfterDone));
}

#[test]
fn unknown_scenario_lists_names() {
    let Err(EnvError::Config(e)) = create_environment("no_such_drill", EnvOptions::default()) else {
        panic!("expected a config error");
    };
    assert!(e.to_string().contains("11_vs_11_medium"));
}

#[test]
fn scenario_file_loads_by_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("drill.scn");
    std::fs::write(
        &path,
        "name = drill\nduration_frames = 50\nball = 0.5 0\nleft_player = forward 0.5 0\nright_player = keeper 1 0\n",
    )
    .unwrap();
    let mut env = create_environment(path.to_str().unwrap(), EnvOptions::default()).unwrap();
    env.reset().unwrap();
    let mut steps = 0;
    while !env.is_done() {
        env.step(&[Action::Idle]).unwrap();
        steps += 1;
    }
    assert!(steps <= 50);
}

#[test]
fn opponent_policy_receives_one_observation_per_player() {
    let calls = Arc::new(AtomicUsize::new(0));
    let seen = calls.clone();
    let options = EnvOptions { reward: RewardKind::Checkpoints, ..Default::default() };
    let mut env = create_environment("3_vs_1_with_keeper", options).unwrap();
    env.set_opponent_policy(Box::new(move |obs: &[Observation]| {
        seen.fetch_add(1, Ordering::Relaxed);
        assert_eq!(obs.len(), 2);
        vec![Action::Idle; obs.len()]
    }));
    env.reset().unwrap();
    for _ in 0..5 {
        if env.is_done() {
            break;
        }
        env.step(&[Action::Idle; 3]).unwrap();
    }
    assert!(calls.load(Ordering::Relaxed) >= 1);
}
