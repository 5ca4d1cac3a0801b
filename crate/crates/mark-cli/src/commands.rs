//! One function per subcommand, flags already parsed. Each returns the
//! rendered output so the caller owns writing and exit codes; anything a
//! human should see but a pipe should not goes to stderr here.

use mark::{
    apparent_intractability, apply_ordering, ark_continuous, ark_discrete, ark_higher_order,
    ark_nominal, entropy_report, local_intractability, mark_series, order_composite,
    overall_intractability, pi_profile_continuous, pi_profile_discrete, shannon_continuous,
    shannon_normalized, std_dev_continuous, ChoiceTree, ContinuousBelief, DiscreteBelief,
    InterestWindow, KnowledgeScore, OrderingMode, RankedCandidate, TrajectoryPoint,
};

use crate::error::{CliError, CliResult};
use crate::input::{self, FileConfig, Format, JsonDensity, Loaded, StateInput, TimelineInput};
use crate::render;
use crate::report::{
    DensityReport, IntractabilityReport, OrderReport, OrderRow, SignatureRow, StateReport,
    TimelineReport, TimelineStateRow, TreeGenerationRow, TreeNodeRow, TreeReport,
};

/// Fully resolved knobs: command-line flags override the input file's
/// config block, which overrides built-in defaults.
pub struct Settings {
    pub ioi: Option<f64>,
    pub iof: Option<f64>,
    pub ordering: Option<OrderingMode>,
    pub normalized: bool,
    pub percent: bool,
    pub log_base: f64,
    pub alpha: Vec<f64>,
    pub k: u32,
    pub format: Format,
}

/// Flag values as given, `None` meaning "not on the command line".
#[derive(Default)]
pub struct FlagValues {
    pub ioi: Option<f64>,
    pub iof: Option<f64>,
    pub ordering: Option<OrderingMode>,
    pub normalized: bool,
    pub percent: bool,
    pub log_base: Option<f64>,
    pub alpha: Vec<f64>,
    pub k: Option<u32>,
    pub format: Option<Format>,
}

impl Settings {
    pub fn resolve(flags: FlagValues, config: FileConfig) -> CliResult<Self> {
        let log_base = flags.log_base.or(config.log_base).unwrap_or(2.0);
        if !log_base.is_finite() || log_base <= 1.0 {
            return Err(CliError::input(format!(
                "log base must exceed 1, got {log_base}"
            )));
        }
        let alpha = if flags.alpha.is_empty() {
            config.alpha.unwrap_or_default()
        } else {
            flags.alpha
        };
        Ok(Settings {
            ioi: flags.ioi.or(config.ioi),
            iof: flags.iof.or(config.iof),
            ordering: flags.ordering.or(config.ordering),
            normalized: flags.normalized || config.normalized.unwrap_or(false),
            percent: flags.percent || config.percent.unwrap_or(false),
            log_base,
            alpha,
            k: flags.k.or(config.k).unwrap_or(0),
            format: flags.format.or(config.format).unwrap_or(Format::Table),
        })
    }

    fn window_or_nominal(&self, n: usize) -> CliResult<InterestWindow> {
        match (self.ioi, self.iof) {
            (None, None) => Ok(InterestWindow::nominal(n)),
            (Some(a), Some(b)) => Ok(InterestWindow::new(a, b)?),
            _ => Err(CliError::input(
                "give both --ioi and --iof, or neither for the nominal window",
            )),
        }
    }

    fn required_ordering(&self) -> CliResult<OrderingMode> {
        self.ordering.ok_or_else(|| {
            CliError::input(
                "choose --ordering listed|by-probability|composite \
                 (or set \"ordering\" in the input's config block); \
                 the arrangement changes the score, so it is never guessed",
            )
        })
    }
}

fn scale_percent(probs: &mut [f64], percent: bool) {
    if percent {
        for p in probs.iter_mut() {
            *p /= 100.0;
        }
    }
}

/// Builds the belief a state or timeline row is scored as, honoring the
/// requested arrangement. Composite needs the rank panel.
fn arranged_belief(
    labels: Vec<String>,
    probs: Vec<f64>,
    ordering: OrderingMode,
    ranks: Option<&[Option<u32>]>,
) -> CliResult<DiscreteBelief> {
    match ordering {
        OrderingMode::Listed | OrderingMode::ByProbability => {
            Ok(DiscreteBelief::with_labels(labels, probs, ordering, false)?)
        }
        OrderingMode::Composite => {
            let ranks = ranks.ok_or_else(|| {
                CliError::input(
                    "composite ordering needs a rank panel; supply a \"ranks\" \
                     array in a JSON input",
                )
            })?;
            let candidates: Vec<RankedCandidate> = labels
                .iter()
                .zip(&probs)
                .zip(ranks)
                .map(|((l, &p), &r)| RankedCandidate::new(l.clone(), r, p))
                .collect::<mark::Result<_>>()?;
            let line = order_composite(&candidates)?;
            let belief = DiscreteBelief::with_labels(labels, probs, OrderingMode::Listed, false)?;
            Ok(apply_ordering(&belief, &line)?)
        }
    }
}

fn weighted_score(
    belief: &DiscreteBelief,
    window: &InterestWindow,
    k: u32,
) -> CliResult<Option<KnowledgeScore>> {
    if k == 0 {
        return Ok(None);
    }
    let profile = pi_profile_discrete(belief, window)?;
    Ok(Some(ark_higher_order(&profile, window, k)?))
}

pub fn state(path: &std::path::Path, flags: FlagValues) -> CliResult<String> {
    let loaded = input::load(path)?;
    let settings = Settings::resolve(flags, loaded.config())?;

    if let Loaded::Json(ref j) = loaded {
        if let Some(density) = &j.density {
            if j.probs.is_some() {
                return Err(CliError::input(
                    "input has both \"probs\" and \"density\"; a state is one or the other",
                ));
            }
            return density_state(density, &settings);
        }
    }

    let raw = match &loaded {
        Loaded::Csv(rows) => input::state_from_csv(rows)?,
        Loaded::Json(j) => input::state_from_json(j)?,
    };
    let ordering = settings.required_ordering()?;
    let StateInput {
        labels,
        mut probs,
        ranks,
    } = raw;
    scale_percent(&mut probs, settings.percent);
    let belief = arranged_belief(labels, probs, ordering, ranks.as_deref())?;
    let window = settings.window_or_nominal(belief.n())?;

    let report = StateReport {
        labels: belief.labels().unwrap_or_default().to_vec(),
        probs: belief.probs().to_vec(),
        ordering,
        window,
        score: ark_discrete(&belief, &window)?,
        weighted: weighted_score(&belief, &window, settings.k)?,
        entropy: entropy_report(&belief, settings.log_base, &settings.alpha)?,
    };
    render::render_state(&report, settings.format)
}

fn density_state(density: &JsonDensity, settings: &Settings) -> CliResult<String> {
    if settings.ordering.is_some() {
        eprintln!("note: a density has no candidate arrangement; --ordering has no effect");
    }
    let (ioi, iof) = match (settings.ioi, settings.iof) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(CliError::input(
                "a density needs --ioi and --iof; no default window exists on a continuum",
            ))
        }
    };
    let mut samples = density.samples.clone();
    scale_percent(&mut samples, settings.percent);
    let belief = ContinuousBelief::new(density.lo, density.hi, samples, false)?;
    let window = InterestWindow::new(ioi, iof)?;
    let score = ark_continuous(&belief, &window)?;
    let weighted = if settings.k > 0 {
        let profile = pi_profile_continuous(&belief, &window)?;
        Some(ark_higher_order(&profile, &window, settings.k)?)
    } else {
        None
    };
    let report = DensityReport {
        lo: belief.lo(),
        hi: belief.hi(),
        samples: belief.samples().len(),
        window,
        score,
        weighted,
        shannon: shannon_continuous(&belief, settings.log_base),
        std_dev: std_dev_continuous(&belief),
    };
    render::render_density(&report, settings.format)
}

pub fn timeline(path: &std::path::Path, flags: FlagValues) -> CliResult<String> {
    let loaded = input::load(path)?;
    let settings = Settings::resolve(flags, loaded.config())?;
    let raw = match &loaded {
        Loaded::Csv(rows) => input::timeline_from_csv(rows)?,
        Loaded::Json(j) => input::timeline_from_json(j)?,
    };
    let ordering = settings.required_ordering()?;
    let TimelineInput {
        labels,
        states,
        ranks,
    } = raw;

    let states: Vec<(String, f64, Vec<f64>)> = states
        .into_iter()
        .map(|(name, resource, mut probs)| {
            scale_percent(&mut probs, settings.percent);
            (name, resource, probs)
        })
        .collect();

    // A series is only comparable point to point under one fixed
    // arrangement. For composite that arrangement comes from the rank
    // panel once, with ties broken by the opening state's probabilities;
    // by-probability re-sorting happens inside the series scorer on
    // copies, so the rows below keep the input arrangement.
    let line = if ordering == OrderingMode::Composite {
        let ranks = ranks.as_deref().ok_or_else(|| {
            CliError::input(
                "composite ordering needs a rank panel; supply a \"ranks\" \
                 array in a JSON input",
            )
        })?;
        let candidates: Vec<RankedCandidate> = labels
            .iter()
            .zip(&states[0].2)
            .zip(ranks)
            .map(|((l, &p), &r)| RankedCandidate::new(l.clone(), r, p))
            .collect::<mark::Result<_>>()?;
        Some(order_composite(&candidates)?)
    } else {
        None
    };

    let mut points = Vec::with_capacity(states.len());
    let mut rows = Vec::with_capacity(states.len());
    for (name, resource, probs) in states {
        let sum: f64 = probs.iter().sum();
        let belief =
            DiscreteBelief::with_labels(labels.clone(), probs, OrderingMode::Listed, false)
                .map_err(|e| CliError::input(format!("state {name:?}: {e}")))?;
        let belief = match &line {
            Some(l) => apply_ordering(&belief, l)?,
            None => belief,
        };
        rows.push(TimelineStateRow {
            name,
            resource,
            probs: belief.probs().to_vec(),
            sum,
            shannon: mark::shannon_discrete(&belief, settings.log_base),
            mark: 0.0,
        });
        points.push(TrajectoryPoint::new(resource, belief)?);
    }

    let window = settings.window_or_nominal(labels.len())?;
    let signature = mark_series(&points, &window, ordering, settings.normalized)?;
    for (row, point) in rows.iter_mut().zip(signature.points()) {
        row.mark = point.mark;
    }

    let sig_rows: Vec<SignatureRow> = signature
        .points()
        .iter()
        .zip(&points)
        .map(|(p, tp)| SignatureRow {
            resource: p.resource,
            mark: p.mark,
            shannon_normalized: shannon_normalized(tp.belief(), settings.log_base),
        })
        .collect();

    let apparent: Vec<Option<f64>> = signature
        .points()
        .windows(2)
        .map(|pair| apparent_intractability(pair[0], pair[1]).ok())
        .collect();
    let local = local_intractability(&signature);
    let overall = match overall_intractability(&signature) {
        Ok(v) => Some(v),
        Err(mark::Error::IncompleteSpan { start, end, .. }) => {
            eprintln!(
                "note: curve spans {} down to {}, not 1 to 0; overall intractability omitted",
                render::fmt_sig(start),
                render::fmt_sig(end)
            );
            None
        }
        Err(e) => return Err(e.into()),
    };

    // Label order in the header: shared composite arrangement if one was
    // applied, otherwise the input arrangement.
    let header_labels = match line {
        Some(_) => points[0].belief().labels().unwrap_or_default().to_vec(),
        None => labels,
    };
    let report = TimelineReport {
        labels: header_labels,
        ordering,
        window,
        normalized: settings.normalized,
        states: rows,
        signature: sig_rows,
        intractability: IntractabilityReport {
            apparent,
            local,
            overall,
        },
    };
    render::render_timeline(&report, settings.format)
}

pub fn tree(path: &std::path::Path, flags: FlagValues) -> CliResult<String> {
    let loaded = input::load(path)?;
    let settings = Settings::resolve(flags, loaded.config())?;
    let json = match &loaded {
        Loaded::Json(j) => j,
        Loaded::Csv(_) => {
            return Err(CliError::input(
                "tree input must be JSON; CSV cannot express nesting",
            ))
        }
    };
    let (root, aggregate) = input::tree_from_json(json)?;
    let tree = if aggregate {
        ChoiceTree::from_leaf_masses(root)?
    } else {
        ChoiceTree::new(root)?
    };

    let mut nodes = Vec::new();
    for (node, depth) in tree.nodes() {
        let challenge = if node.is_leaf() {
            None
        } else {
            let line = tree.node_challenge(node.label())?;
            Some(ark_nominal(&line)?)
        };
        nodes.push(TreeNodeRow {
            label: node.label().to_string(),
            depth,
            prob: node.prob(),
            challenge,
        });
    }

    let mut generations = Vec::new();
    for level in 1..=tree.depth() {
        match tree.generational_belief(level) {
            Ok(belief) => generations.push(TreeGenerationRow {
                level,
                labels: belief.labels().unwrap_or_default().to_vec(),
                probs: belief.probs().to_vec(),
                score: ark_nominal(&belief)?,
            }),
            Err(mark::Error::SumMismatch { sum, .. }) => {
                eprintln!(
                    "note: generation {level} holds {} of the mass, not all of it; skipped",
                    render::fmt_sig(sum)
                );
            }
            Err(mark::Error::EmptyOrSingleton(_)) => {
                eprintln!(
                    "note: generation {level} has a single node, no challenge to score; skipped"
                );
            }
            Err(e) => return Err(e.into()),
        }
    }

    let report = TreeReport {
        depth: tree.depth(),
        nodes,
        generations,
    };
    render::render_tree(&report, settings.format)
}

pub fn order(path: &std::path::Path, flags: FlagValues) -> CliResult<String> {
    let loaded = input::load(path)?;
    let settings = Settings::resolve(flags, loaded.config())?;
    let candidates = match &loaded {
        Loaded::Csv(rows) => input::order_from_csv(rows, settings.percent)?,
        Loaded::Json(j) => input::order_from_json(j, settings.percent)?,
    };
    let line = order_composite(&candidates)?;
    let rows: Vec<OrderRow> = line
        .candidates()
        .iter()
        .zip(line.provenance())
        .enumerate()
        .map(|(i, (c, &p))| OrderRow {
            position: i + 1,
            label: c.label().to_string(),
            rank: c.rank(),
            prob: c.prob(),
            provenance: p,
        })
        .collect();
    render::render_order(&OrderReport { candidates: rows }, settings.format)
}
