//! One engine for the row, column and grid splittings.
//!
//! Workers sit on an `M x N` grid: worker `(i, j)` owns `H_ij` and the
//! measurements `g_i` of its row block. Consensus is the `N = 1` column,
//! sectioning the `M = 1` row. When `M` replicas exist (consensus, hybrid)
//! each image segment `j` has a hub that averages the replicas and applies
//! the shrinkage; sectioning workers shrink their own segment.
//!
//! One iteration:
//!
//! 1. hubs broadcast `v_j` from the previous iteration; workers fold it into
//!    their dual `s` on receipt;
//! 2. workers rebuild their data `g_i - sum_{q != j} estimates_q`, solve for
//!    `u`, send it to their hub (or shrink locally), and broadcast the
//!    estimate `H_ij u` to the workers of the same replica;
//! 3. hubs average and shrink.

use std::borrow::Cow;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::admm::{soft_threshold_sum, SolverConfig};
use crate::comm::NodeRole;
use crate::error::{Error, Result};
use crate::linalg::{adjoint_matvec, dist_sqr, matvec, CVector, GramSolver};
use crate::net::{Message, Network, NodeId, Outbox, Topic};
use crate::partition::{grid_block, PartitionSpec};
use crate::problem::SensingProblem;

use super::report::{prepare, BlockInfo, MethodSpec, Monitor, SolveReport, Timing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Layout {
    Consensus,
    Sectioning,
    Hybrid,
}

impl Layout {
    fn has_hubs(self) -> bool {
        self != Layout::Sectioning
    }

    fn exchanges_estimates(self) -> bool {
        self != Layout::Consensus
    }

    fn worker_role(self, i: usize, j: usize) -> NodeRole {
        match self {
            Layout::Consensus => NodeRole::RowWorker(i),
            Layout::Sectioning => NodeRole::ColWorker(j),
            Layout::Hybrid => NodeRole::GridWorker(i, j),
        }
    }

    fn hub_role(self, j: usize) -> NodeRole {
        match self {
            Layout::Hybrid => NodeRole::SegmentCentral(j),
            _ => NodeRole::Central,
        }
    }

    fn method(self, spec: &PartitionSpec) -> MethodSpec {
        match self {
            Layout::Consensus => MethodSpec::Consensus { m: spec.m() },
            Layout::Sectioning => MethodSpec::Sectioning { n: spec.n() },
            Layout::Hybrid => MethodSpec::Hybrid {
                m: spec.m(),
                n: spec.n(),
            },
        }
    }
}

struct Worker {
    replica: usize,
    segment: usize,
    gram: GramSolver,
    /// Measurements of this worker's row block.
    g: CVector,
    /// `H_ij^* g_i`, fixed when there are no peers to subtract.
    fixed_hg: Option<CVector>,
    hub: Option<NodeId>,
    peers: Vec<NodeId>,
    /// Latest estimate received from each same-replica peer, by segment.
    estimates: Vec<Option<Arc<CVector>>>,
    u: CVector,
    s: CVector,
    /// The worker's copy of its segment of the consensus variable.
    v: CVector,
    v_prev: CVector,
}

impl Worker {
    fn step(
        &mut self,
        inbox: Vec<Message>,
        layout: Layout,
        rho: f64,
        kappa: f64,
    ) -> Result<Outbox> {
        for msg in inbox {
            match msg.topic {
                Topic::Consensus { .. } => {
                    self.v = Arc::unwrap_or_clone(msg.payload);
                    for ((sl, ul), vl) in self
                        .s
                        .as_mut_slice()
                        .iter_mut()
                        .zip(self.u.iter())
                        .zip(self.v.iter())
                    {
                        *sl = *sl + ul - vl;
                    }
                }
                Topic::Estimate { segment, .. } => self.estimates[segment] = Some(msg.payload),
                Topic::Replica { .. } => {
                    return Err(Error::Parameter("worker received a replica update".into()));
                }
            }
        }

        let hg = match &self.fixed_hg {
            Some(hg) => Cow::Borrowed(hg),
            None => Cow::Owned(adjoint_matvec(self.gram.block(), &self.local_data()?)?),
        };
        let rhs = CVector::from_vec_unchecked(
            hg.iter()
                .zip(self.v.iter().zip(self.s.iter()))
                .map(|(b, (vl, sl))| b + (vl - sl) * rho)
                .collect(),
        );
        self.u = self.gram.solve(&rhs)?;

        let mut out = Outbox::default();
        match self.hub {
            Some(hub) => out.send(
                hub,
                Topic::Replica {
                    replica: self.replica,
                    segment: self.segment,
                },
                self.u.clone(),
            ),
            None => {
                let v = soft_threshold_sum(self.u.as_slice(), self.s.as_slice(), kappa);
                self.v_prev = std::mem::replace(&mut self.v, v);
                for ((sl, ul), vl) in self
                    .s
                    .as_mut_slice()
                    .iter_mut()
                    .zip(self.u.iter())
                    .zip(self.v.iter())
                {
                    *sl = *sl + ul - vl;
                }
            }
        }
        if layout.exchanges_estimates() {
            out.broadcast(
                self.peers.clone(),
                Topic::Estimate {
                    replica: self.replica,
                    segment: self.segment,
                },
                matvec(self.gram.block(), &self.u)?,
            );
        }
        Ok(out)
    }

    /// `g_i - sum_{q != j} estimate_q`, summed in ascending `q`. Estimates
    /// not yet received are zero.
    fn local_data(&self) -> Result<CVector> {
        let mut known = self
            .estimates
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != self.segment)
            .filter_map(|(_, e)| e.as_deref());
        let Some(first) = known.next() else {
            return Ok(self.g.clone());
        };
        let mut sum = first.clone();
        for e in known {
            sum = sum.add(e)?;
        }
        self.g.sub(&sum)
    }
}

struct Hub {
    segment: usize,
    workers: Vec<NodeId>,
    v: CVector,
    v_prev: CVector,
    /// Mean of the replicas' duals, tracked from the means the hub sees.
    s_bar: CVector,
}

impl Hub {
    fn announce(&self) -> Outbox {
        let mut out = Outbox::default();
        out.broadcast(
            self.workers.clone(),
            Topic::Consensus {
                segment: self.segment,
            },
            self.v.clone(),
        );
        out
    }

    fn step(&mut self, inbox: Vec<Message>, kappa: f64) -> Result<()> {
        let mut parts: Vec<(usize, Arc<CVector>)> = inbox
            .into_iter()
            .map(|msg| match msg.topic {
                Topic::Replica { replica, .. } => Ok((replica, msg.payload)),
                _ => Err(Error::Parameter(
                    "hub received a non-replica message".into(),
                )),
            })
            .collect::<Result<_>>()?;
        if parts.len() != self.workers.len() {
            return Err(Error::Parameter(format!(
                "hub {} expected {} replicas, got {}",
                self.segment,
                self.workers.len(),
                parts.len()
            )));
        }
        parts.sort_by_key(|p| p.0);
        let mut it = parts.into_iter().map(|p| p.1);
        let mut sum = it
            .next()
            .map(Arc::unwrap_or_clone)
            .expect("at least one replica");
        for u in it {
            sum = sum.add(&u)?;
        }
        let count = self.workers.len() as f64;
        let mean = CVector::from_vec_unchecked(sum.iter().map(|x| x / count).collect());
        let v = soft_threshold_sum(mean.as_slice(), self.s_bar.as_slice(), kappa);
        self.v_prev = std::mem::replace(&mut self.v, v);
        for ((sl, ul), vl) in self
            .s_bar
            .as_mut_slice()
            .iter_mut()
            .zip(mean.iter())
            .zip(self.v.iter())
        {
            *sl = *sl + ul - vl;
        }
        Ok(())
    }
}

pub(crate) fn run(
    problem: &SensingProblem,
    cfg: &SolverConfig,
    spec: &PartitionSpec,
    layout: Layout,
) -> Result<SolveReport> {
    let problem = prepare(problem, cfg)?;
    let problem = problem.as_ref();
    spec.check_problem(problem)?;
    let (m, n) = (spec.m(), spec.n());
    match layout {
        Layout::Consensus if n != 1 => {
            return Err(Error::Partition(format!(
                "row split needs one column block, got {n}"
            )))
        }
        Layout::Sectioning if m != 1 => {
            return Err(Error::Partition(format!(
                "column split needs one row block, got {m}"
            )))
        }
        _ => {}
    }
    let started = Instant::now();
    let rho = cfg.rho;
    let workers_total = m * n;
    let hub_of = |j: usize| layout.has_hubs().then_some(workers_total + j);

    let mut workers: Vec<Worker> = (0..workers_total)
        .into_par_iter()
        .map(|id| {
            let (i, j) = (id / n, id % n);
            let rows = spec.rows_of(i);
            let g = problem.g().segment(rows)?;
            let block = grid_block(problem, spec, i, j)?;
            let fixed_hg = if layout.exchanges_estimates() && n > 1 {
                None
            } else {
                Some(adjoint_matvec(&block, &g)?)
            };
            let width = block.cols();
            Ok(Worker {
                replica: i,
                segment: j,
                gram: GramSolver::new(block, rho)?,
                g,
                fixed_hg,
                hub: hub_of(j),
                peers: (0..n).filter(|&q| q != j).map(|q| i * n + q).collect(),
                estimates: vec![None; n],
                u: CVector::zeros(width),
                s: CVector::zeros(width),
                v: CVector::zeros(width),
                v_prev: CVector::zeros(width),
            })
        })
        .collect::<Result<_>>()?;
    let mut hubs: Vec<Hub> = if layout.has_hubs() {
        (0..n)
            .map(|j| {
                let width = spec.cols_of(j).len();
                Hub {
                    segment: j,
                    workers: (0..m).map(|i| i * n + j).collect(),
                    v: CVector::zeros(width),
                    v_prev: CVector::zeros(width),
                    s_bar: CVector::zeros(width),
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    let blocks = workers
        .iter()
        .map(|w| BlockInfo {
            node: layout.worker_role(w.replica, w.segment),
            rows: w.gram.block().rows(),
            cols: w.gram.block().cols(),
            strategy: w.gram.strategy(),
            inner_dim: w.gram.inner_dim(),
        })
        .collect();

    let mut roles: Vec<NodeRole> = (0..workers_total)
        .map(|id| layout.worker_role(id / n, id % n))
        .collect();
    roles.extend((0..hubs.len()).map(|j| layout.hub_role(j)));
    let mut net = Network::new(roles);
    let mut monitor = Monitor::new(cfg, problem);
    let m_f = m as f64;
    let kappa = if layout.has_hubs() {
        cfg.lambda / (m_f * rho)
    } else {
        cfg.lambda / rho
    };
    let setup = started.elapsed();
    let started = Instant::now();

    for k in 1..=cfg.max_iters {
        net.begin_iteration();
        for hub in &hubs {
            net.post(workers_total + hub.segment, hub.announce());
        }

        let inboxes: Vec<Vec<Message>> = (0..workers_total).map(|id| net.take_inbox(id)).collect();
        let outboxes = workers
            .par_iter_mut()
            .zip(inboxes)
            .map(|(w, inbox)| w.step(inbox, layout, rho, kappa))
            .collect::<Result<Vec<_>>>()?;
        net.post_all(outboxes.into_iter().enumerate());

        let inboxes: Vec<Vec<Message>> = (0..hubs.len())
            .map(|j| net.take_inbox(workers_total + j))
            .collect();
        hubs.par_iter_mut()
            .zip(inboxes)
            .map(|(h, inbox)| h.step(inbox, kappa))
            .collect::<Result<Vec<_>>>()?;

        // Observation only: nothing below is metered.
        let segment_v = |j: usize| -> (&CVector, &CVector) {
            if layout.has_hubs() {
                (&hubs[j].v, &hubs[j].v_prev)
            } else {
                (&workers[j].v, &workers[j].v_prev)
            }
        };
        let mut primal_sqr = 0.0;
        for w in &workers {
            primal_sqr += dist_sqr(w.u.as_slice(), segment_v(w.segment).0.as_slice());
        }
        let mut change = 0.0;
        for j in 0..n {
            let (v, prev) = segment_v(j);
            change += dist_sqr(v.as_slice(), prev.as_slice());
        }
        let dual_sqr = rho * rho * m_f * change;
        let v = join((0..n).map(|j| segment_v(j).0))?;
        let replicas = || {
            (0..m)
                .map(|i| join(workers[i * n..(i + 1) * n].iter().map(|w| &w.u)))
                .collect::<Result<Vec<_>>>()
                .expect("replica segments have matching lengths")
        };
        if monitor.observe(k, primal_sqr, dual_sqr, &v, replicas)? {
            break;
        }
    }

    let solution = join((0..n).map(|j| {
        if layout.has_hubs() {
            &hubs[j].v
        } else {
            &workers[j].v
        }
    }))?;
    let timing = Timing {
        setup,
        iterations: started.elapsed(),
    };
    monitor.finish(
        layout.method(spec),
        solution,
        net.into_ledger(),
        blocks,
        timing,
    )
}

fn join<'a>(parts: impl Iterator<Item = &'a CVector>) -> Result<CVector> {
    let parts: Vec<&CVector> = parts.collect();
    if let [one] = parts.as_slice() {
        return Ok((*one).clone());
    }
    CVector::concat(parts)
}
