//! Baseline selectors: correlation ranking, ReliefF, greedy sequential
//! search under HSIC or LSMI, mRMR, QPFS, and a lasso with its penalty
//! bisected to the requested support size.

mod lasso;
mod mrmr;
mod qpfs;
mod ranking;
mod relief;
mod sequential;

pub use lasso::lasso_select;
pub use mrmr::mrmr;
pub use qpfs::{qpfs, qpfs_with_alpha, QpfsProblem};
pub use ranking::rank_pearson;
pub use relief::relieff;
pub use sequential::{sequential_search, Direction, SequentialStep, SequentialTrace};
