use std::collections::VecDeque;

use super::Observation;

/// The `k` most recent observations, oldest first.
#[derive(Debug, Clone, PartialEq)]
pub struct StackedObservation {
    pub frames: Vec<Observation>,
}

impl StackedObservation {
    pub fn k(&self) -> usize {
        self.frames.len()
    }

    pub fn latest(&self) -> &Observation {
        self.frames.last().expect("stack is never empty")
    }

    /// Shape with frames stacked along the leading axis (`[4k, 72, 96]`
    /// for SMM, `[k, 115]` for floats).
    pub fn shape(&self) -> Vec<usize> {
        let mut s = self.latest().shape();
        match self.latest() {
            Observation::Smm(_) => s[0] *= self.k(),
            _ => s.insert(0, self.k()),
        }
        s
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.frames.iter().flat_map(|f| f.to_bytes()).collect()
    }
}

/// Window over `history` (oldest first): its last `k` entries, with the
/// first entry repeated in front while fewer than `k` exist.
pub fn stack_obs(history: &[Observation], k: usize) -> StackedObservation {
    assert!(k >= 1 && !history.is_empty());
    let missing = k.saturating_sub(history.len());
    let start = history.len().saturating_sub(k);
    let frames = std::iter::repeat_n(&history[0], missing)
        .chain(&history[start..])
        .cloned()
        .collect();
    StackedObservation { frames }
}

/// Rolling window used by the environment; `reset` starts warm-up over.
#[derive(Debug, Clone)]
pub struct FrameStack {
    k: usize,
    frames: VecDeque<Observation>,
}

impl FrameStack {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1);
        Self { k, frames: VecDeque::with_capacity(k) }
    }

    pub fn reset(&mut self, first: Observation) -> StackedObservation {
        self.frames.clear();
        for _ in 0..self.k {
            self.frames.push_back(first.clone());
        }
        self.current()
    }

    pub fn push(&mut self, obs: Observation) -> StackedObservation {
        if self.frames.is_empty() {
            return self.reset(obs);
        }
        if self.frames.len() == self.k {
            self.frames.pop_front();
        }
        self.frames.push_back(obs);
        self.current()
    }

    fn current(&self) -> StackedObservation {
        StackedObservation { frames: self.frames.iter().cloned().collect() }
    }
}
