use super::CsrMatrix;
use crate::error::{Error, Result};

/// Admissible lane-group sizes.
pub const LANE_GROUP_SIZES: [usize; 6] = [1, 2, 4, 8, 16, 32];

/// Group size at which a row is treated as dense-leaning.
pub const MAX_LANE_GROUP: usize = 32;

/// Work per parallel task, in stored entries.
const TASK_NNZ: usize = 16 * 1024;

/// How a row is split across accumulation lanes in SpMV.
///
/// A row is processed by `group_size` lanes: lane `l` accumulates entries
/// `l, l + g, l + 2g, ...` and the lanes are then combined by halving, the
/// way a sub-warp reduces with shuffles. Group size 1 is the plain
/// single-accumulator loop used for piecewise-constant prolongators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaneGroupPolicy {
    group_size: usize,
    rows_per_task: usize,
}

impl LaneGroupPolicy {
    pub fn new(group_size: usize) -> Result<Self> {
        if !LANE_GROUP_SIZES.contains(&group_size) {
            return Err(Error::InvalidConfig(format!(
                "lane group size {group_size} not in {LANE_GROUP_SIZES:?}"
            )));
        }
        Ok(LaneGroupPolicy {
            group_size,
            rows_per_task: 256,
        })
    }

    /// Pick the smallest admissible group size not below the mean row
    /// length (capped at 32). Size 1 only when every row has exactly one
    /// entry.
    pub fn for_matrix(a: &CsrMatrix) -> Self {
        let group_size = Self::select_group_size(a);
        let mean = a.mean_row_nnz().max(1.0);
        let rows_per_task = ((TASK_NNZ as f64 / mean) as usize).max(64);
        LaneGroupPolicy {
            group_size,
            rows_per_task,
        }
    }

    fn select_group_size(a: &CsrMatrix) -> usize {
        if (0..a.nrows()).all(|i| a.row_nnz(i) == 1) {
            return 1;
        }
        let mean = a.mean_row_nnz();
        LANE_GROUP_SIZES[1..]
            .iter()
            .copied()
            .find(|&g| g as f64 >= mean)
            .unwrap_or(MAX_LANE_GROUP)
    }

    /// Same partitioning as `self`, different lane count.
    pub fn with_group_size(self, group_size: usize) -> Result<Self> {
        let mut p = Self::new(group_size)?;
        p.rows_per_task = self.rows_per_task;
        Ok(p)
    }

    #[inline]
    pub fn group_size(&self) -> usize {
        self.group_size
    }

    #[inline]
    pub fn rows_per_task(&self) -> usize {
        self.rows_per_task
    }

    /// True for the generic path used by dense-leaning matrices.
    pub fn is_dense_path(&self) -> bool {
        self.group_size == MAX_LANE_GROUP
    }
}

impl Default for LaneGroupPolicy {
    fn default() -> Self {
        LaneGroupPolicy {
            group_size: 2,
            rows_per_task: 256,
        }
    }
}
