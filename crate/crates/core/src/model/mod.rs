//! Problem data, decision variables, objective evaluation and constraint checks.

mod feasibility;
mod instance;
mod metrics;
mod objective;
mod validate;

pub use feasibility::{check_feasibility, ConstraintKind, ConstraintViolation};
pub use instance::{AllocationPlan, Category, Instance, Lane, TrailerAssignment};
pub use metrics::{compute_metrics, lane_dos, PlanMetrics};
pub use objective::{allocation_utility, evaluate_objective, g_part};
pub use validate::{validate_instance, ValidationReport, Violation};
