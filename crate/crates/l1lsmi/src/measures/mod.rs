//! Dependence measures: Pearson correlation, the empirical HSIC, plug-in
//! discrete mutual information, and the least-squares estimator of
//! squared-loss mutual information with its cross-validated model selection.

mod basis;
mod discrete_mi;
mod hsic;
mod lsmi;
mod pearson;

pub use basis::{Basis, BasisFeatures};
pub use discrete_mi::{bin_equal_frequency, default_bin_count, discrete_mi};
pub use hsic::{hsic, hsic_config_for, HsicConfig, OutputKernel};
pub use lsmi::{lsmi_cv_select, lsmi_fit, CvGrid, LsmiEstimate, LsmiFit, LsmiModel};
pub use pearson::{pearson, pearson_feature_score, PearsonValue};

pub(crate) use hsic::{gaussian_gram, output_gram};
