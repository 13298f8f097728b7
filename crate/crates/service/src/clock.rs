use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

/// Wall time in seconds.
pub trait Clock: Send + Sync {
    fn now(&self) -> f64;
}

#[derive(Debug, Default)]
pub struct SystemClock;

impl Clock for SystemClock {
    fn now(&self) -> f64 {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs_f64())
            .unwrap_or(0.0)
    }
}

/// A clock that only moves when told to; for tests and replays.
#[derive(Debug, Default)]
pub struct ManualClock {
    t: Mutex<f64>,
}

impl ManualClock {
    pub fn new(start: f64) -> ManualClock {
        ManualClock { t: Mutex::new(start) }
    }

    pub fn advance(&self, seconds: f64) {
        *self.t.lock().expect("clock lock") += seconds;
    }
}

impl Clock for ManualClock {
    fn now(&self) -> f64 {
        *self.t.lock().expect("clock lock")
    }
}
