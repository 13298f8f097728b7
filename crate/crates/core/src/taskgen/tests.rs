use super::*;
use crate::grid::{Connectivity, Symbol};
use crate::oracle::solve;

const SAMPLE: u64 = 60;

#[test]
fn every_task_generates_verified_pairs() {
    let params = GenParams::default();
    for task in TaskId::ALL {
        for i in 0..SAMPLE {
            let pair = generate_pair(task, &mut Rng::new(11, i), &params)
                .unwrap_or_else(|e| panic!("{task} #{i}: {e}"));
            assert_eq!(pair.task, task);
            assert_eq!(solve(task, &pair.question), Ok(pair.answer.clone()));
            assert_eq!(infer_task(&pair.question, &pair.answer), Ok(task));
            assert_ne!(pair.question, pair.answer);
            assert!(pair.question.width() <= MAX_DIM && pair.question.height() <= MAX_DIM);
        }
    }
}

#[test]
fn same_seed_same_dataset_regardless_of_threads() {
    let params = GenParams::default();
    let a = generate_dataset(TaskId::T3, 24, 5, &params).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let b = pool.install(|| generate_dataset(TaskId::T3, 24, 5, &params).unwrap());
    assert_eq!(a, b);
    let c = generate_dataset(TaskId::T3, 24, 6, &params).unwrap();
    assert_ne!(a, c);
}

#[test]
fn grow_blob_is_connected_and_sized() {
    let canvas = Grid::blank(12, 9).unwrap();
    for seed in 0..50 {
        let mut rng = Rng::new(seed, 0);
        let k = rng.range_usize(0, 40);
        let blob = grow_blob(&mut rng, &canvas, k);
        assert_eq!(blob.len(), k + 1);
        let painted = canvas.paint(blob, Symbol::of(4)).unwrap();
        assert_eq!(painted.components(Connectivity::Eight, |s| !s.is_background()).len(), 1);
    }
    // Growth stops once the free area is exhausted.
    let tiny = Grid::blank(2, 2).unwrap();
    assert_eq!(grow_blob(&mut Rng::new(0, 0), &tiny, 10).len(), 4);
}

#[test]
fn carve_keeps_box_and_connectivity() {
    for seed in 0..40 {
        let mut rng = Rng::new(seed, 1);
        let (w, h) = (rng.range_usize(2, 9), rng.range_usize(2, 9));
        let kept = carve(&mut rng, w, h, w * h / 2);
        assert!(spans_box(&kept, w, h));
        assert!(connected8(&kept, w, h));
    }
}

#[test]
fn episodes_pair_up_distinct_halves() {
    let params = GenParams::default();
    let pairs = generate_dataset(TaskId::T2, 9, 1, &params).unwrap();
    let eps = make_episodes(&pairs, 3).unwrap();
    assert_eq!(eps.len(), 4);
    for e in &eps {
        assert_ne!(e.context.question, e.test_question);
    }
    assert_eq!(eps, make_episodes(&pairs, 3).unwrap());
    assert_eq!(make_episodes(&pairs[..1], 3), Err(GenError::TooFewPairs(1)));
    let (train, test) = split_train_test(&pairs, 0);
    assert_eq!((train.len(), test.len()), (7, 2));
}

#[test]
fn impossible_params_are_rejected() {
    let bad = GenParams {
        min_dim: 12,
        max_dim: 4,
        ..GenParams::default()
    };
    assert!(matches!(
        generate_pair(TaskId::T1, &mut Rng::new(0, 0), &bad),
        Err(GenError::InvalidParams(_))
    ));
    let cramped = GenParams {
        min_dim: 3,
        max_dim: 3,
        max_attempts: 4,
        ..GenParams::default()
    };
    assert!(matches!(
        generate_dataset(TaskId::T5, 3, 0, &cramped),
        Err(GenError::AtIndex { .. })
    ));
}
