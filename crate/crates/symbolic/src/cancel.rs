use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::SymError;

/// Cooperative cancellation flag, polled between term merges.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }

    pub fn check(&self) -> Result<(), SymError> {
        if self.is_cancelled() {
            Err(SymError::Cancelled)
        } else {
            Ok(())
        }
    }
}
