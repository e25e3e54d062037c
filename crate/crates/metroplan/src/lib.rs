/*!
Timetable optimization toolkit for a bidirectional metro line.

The line has `N` stations per direction (station ids `1..=N` upstream,
`N+1..=2N` downstream, each physical platform counted once per direction).
Four stations per direction are turnaround-capable; a service may run the
full length of its direction or turn short at an intermediate turnaround.
During peak operation a service may additionally skip a bounded number of
stations inside its zone.

The crate builds mixed-integer linear programs that select services, zones,
stop patterns, timetables and train circulations, and it ships the tooling
around them:

* [`topology`]: line description, running times from kinematic parameters,
  crowdedness-driven dwell assignment, fleet sizing, depot siting.
* [`demand`]: time-invariant origin-destination rate matrices.
* [`model`]: constraint builders and model assembly (off-peak and peak
  variants, service-count and service-quality objectives).
* [`solver`]: exact branch-and-bound over a bounded-variable dual simplex,
  plus MPS export/import and a plain-text solution format.
* [`flow_sim`]: event-driven FIFO passenger flow simulator used as the
  behavioral reference for the flow constraint families.
* [`pareto`]: epsilon-constraint sweep between the two objectives and
  non-dominance filtering.
* [`cli`]: the `metroplan` command line (instance JSON, bundled fixtures,
  solve/simulate/pareto/export pipelines).
*/

pub mod cli;
pub mod demand;
pub mod flow_sim;
pub mod milp;
pub mod model;
pub mod pareto;
pub mod solver;
pub mod topology;

pub use demand::{Direction, ODMatrix};
pub use milp::{ConstraintFamily, MilpInstance};
pub use topology::LineTopology;
