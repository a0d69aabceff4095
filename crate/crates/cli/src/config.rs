//! Scenario files: INI sections `[network] [params] [initial] [schedule]
//! [stop] [output]` plus a top-level `seed`.
//!
//! Seeds: an explicit `seed` key inside a section wins, otherwise the section
//! seed is derived from the top-level seed. A `--seed` flag replaces the
//! top-level seed and discards the per-section ones, so the flag alone fixes
//! every random draw.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use coevo::analysis::TheoremId;
use coevo::dynamics::{ActivationSchedule, SimOptions, StopCriterion};
use coevo::genesis::{
    complement, format_index_set, initial_state, parse_index_set, sub_seed, CrossWeights, GenKind, GenSpec, InitialKind,
};
use coevo::netcore::io::load_network;
use coevo::netcore::{AgentParams, PopulationState, TwoLayerNetwork};
use coevo::{Action, AgentKind, Network, Params, State};
use ini::{Ini, Properties};

const NETWORK_STREAM: u64 = 1;
const INITIAL_STREAM: u64 = 2;
const SCHEDULE_STREAM: u64 = 3;

const EXAMPLE3: &str = "\
seed = 3

[network]
generator = conditioned
n = 30
theorem = thm3
positive = 1-15

[params]
lambda = 0.8
beta = 0.6
epsilon = 1
alpha = 0

[initial]
kind = polarized
positive = 1-15
";

const EXAMPLE4: &str = "\
seed = 4

[network]
generator = random
n = 30

[params]
lambda = 0.5
beta = 0.8
epsilon = -1
alpha = 0

[initial]
kind = positive_opinions
";

const EXAMPLE5: &str = "\
seed = 5

[network]
generator = bipartite
n = 30
positive = 1-15
cross = random

[params]
lambda = 0.7
beta = 0.6
epsilon = -1
alpha = 0

[initial]
kind = polarized
positive = 1-15
";

pub const PRESETS: [&str; 3] = ["example3", "example4", "example5"];

pub fn preset(name: &str) -> Result<&'static str> {
    match name {
        "example3" => Ok(EXAMPLE3),
        "example4" => Ok(EXAMPLE4),
        "example5" => Ok(EXAMPLE5),
        _ => bail!("unknown preset {name:?}; expected one of {}", PRESETS.join(", ")),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkSource {
    File(PathBuf),
    Generated { kind: GenKindSpec, n: usize, seed: Option<u64>, zero_diagonal: bool },
}

/// Generator recipe before the seed is resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum GenKindSpec {
    Random,
    Conditioned { theorem: TheoremId, positive: Vec<usize> },
    Bipartite { positive: Vec<usize>, cross: CrossWeights },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamSpec {
    /// Length one broadcasts to every agent.
    pub lambda: Vec<f64>,
    pub beta: Vec<f64>,
    pub epsilon: Vec<AgentKind>,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialSpec {
    /// `positive` defaults to the network's positive set.
    Polarized {
        positive: Option<Vec<usize>>,
    },
    /// Opinions in `(0, 1]`; actions random unless `positive` fixes them.
    PositiveOpinions {
        positive: Option<Vec<usize>>,
    },
    Random,
    Explicit {
        actions: Vec<Action>,
        opinions: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleSpec {
    RoundRobin,
    Uniform,
    /// 0-based active sets, one per step.
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StopSpec {
    pub max_steps: Option<usize>,
    pub opinion_tol: f64,
    pub window: Option<usize>,
    pub tie_tol: f64,
    pub allow_unverified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub seed: u64,
    /// Set when `--seed` replaced the configured seeds.
    pub seed_forced: bool,
    pub network: NetworkSource,
    pub params: ParamSpec,
    pub initial: InitialSpec,
    pub initial_seed: Option<u64>,
    pub schedule: ScheduleSpec,
    pub schedule_seed: Option<u64>,
    pub stop: StopSpec,
    pub out_dir: PathBuf,
    pub prefix: String,
}

/// Everything needed to run a scenario.
pub struct Built {
    pub net: Network,
    pub params: Params,
    pub z0: State,
    pub schedule: ActivationSchedule,
    pub options: SimOptions<f64>,
    /// Positive side of the scenario's partition, if it names one.
    pub positive: Option<Vec<usize>>,
}

fn allowed(section: &str) -> &'static [&'static str] {
    match section {
        "network" => &["file", "generator", "n", "seed", "zero_diagonal", "theorem", "positive", "cross"],
        "params" => &["lambda", "beta", "epsilon", "alpha"],
        "initial" => &["kind", "seed", "positive", "actions", "opinions"],
        "schedule" => &["kind", "seed", "order"],
        "stop" => &["max_steps", "opinion_tol", "window", "tie_tol", "allow_unverified"],
        "output" => &["dir", "prefix"],
        _ => &[],
    }
}

struct Section<'a> {
    name: &'static str,
    props: Option<&'a Properties>,
}

impl Section<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.props.and_then(|p| p.get(key)).map(str::trim)
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key).map(|v| v.parse::<T>().map_err(|e| anyhow!("[{}] {key} = {v:?}: {e}", self.name))).transpose()
    }

    fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T::Err: std::fmt::Display,
    {
        let Some(v) = self.raw(key) else { return Ok(None) };
        v.split(',')
            .map(|s| s.trim().parse::<T>().map_err(|e| anyhow!("[{}] {key}: {s:?}: {e}", self.name)))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    fn index_set(&self, key: &str, n: usize) -> Result<Option<Vec<usize>>> {
        self.raw(key).map(|v| parse_index_set(v, n).with_context(|| format!("[{}] {key}", self.name))).transpose()
    }
}

fn parse_sign(s: &str) -> Result<i8> {
    match s.trim() {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        other => bail!("expected +1 or -1, got {other:?}"),
    }
}

fn fmt_list(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base).with_context(|| format!("in {}", path.display()))
    }

    /// Relative network paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let ini = Ini::load_from_str(text)?;
        for (name, props) in ini.iter() {
            let Some(name) = name else {
                if let Some((k, _)) = props.iter().find(|(k, _)| *k != "seed") {
                    bail!("unknown top-level key {k:?}");
                }
                continue;
            };
            let keys = allowed(name);
            if keys.is_empty() {
                bail!("unknown section [{name}]");
            }
            if let Some((k, _)) = props.iter().find(|(k, _)| !keys.contains(k)) {
                bail!("unknown key {k:?} in [{name}]");
            }
        }
        let sec = |name: &'static str| Section { name, props: ini.section(Some(name)) };
        let seed = Section { name: "top level", props: Some(ini.general_section()) }.parse("seed")?.unwrap_or(0);

        let net = sec("network");
        let network = match (net.raw("file"), net.raw("generator")) {
            (Some(_), Some(_)) => bail!("[network] takes either file or generator, not both"),
            (Some(f), None) => NetworkSource::File(base.join(f)),
            (None, g) => {
                let n: usize = net.parse("n")?.ok_or_else(|| anyhow!("[network] needs n"))?;
                let positive = net.index_set("positive", n)?;
                let need_positive = || positive.clone().ok_or_else(|| anyhow!("[network] needs positive"));
                let kind = match g.unwrap_or("random") {
                    "random" => GenKindSpec::Random,
                    "conditioned" => GenKindSpec::Conditioned {
                        theorem: net.parse("theorem")?.ok_or_else(|| anyhow!("[network] needs theorem"))?,
                        positive: need_positive()?,
                    },
                    "bipartite" => GenKindSpec::Bipartite {
                        positive: need_positive()?,
                        cross: match net.raw("cross").unwrap_or("uniform") {
                            "uniform" => CrossWeights::Uniform,
                            "random" => CrossWeights::Random,
                            other => bail!("[network] cross must be uniform or random, got {other:?}"),
                        },
                    },
                    other => bail!("[network] unknown generator {other:?}"),
                };
                NetworkSource::Generated {
                    kind,
                    n,
                    seed: net.parse("seed")?,
                    zero_diagonal: net.parse("zero_diagonal")?.unwrap_or(true),
                }
            }
        };

        let p = sec("params");
        let epsilon = match p.raw("epsilon") {
            Some(v) => v
                .split(',')
                .map(|s| parse_sign(s).map(|e| AgentKind::from_sign(e).expect("sign is +-1")))
                .collect::<Result<Vec<_>>>()
                .context("[params] epsilon")?,
            None => bail!("[params] needs epsilon"),
        };
        let params = ParamSpec {
            lambda: p.list("lambda")?.ok_or_else(|| anyhow!("[params] needs lambda"))?,
            beta: p.list("beta")?.ok_or_else(|| anyhow!("[params] needs beta"))?,
            epsilon,
            alpha: p.parse("alpha")?.unwrap_or(0.0),
        };

        let init = sec("initial");
        let n_hint = match &network {
            NetworkSource::Generated { n, .. } => Some(*n),
            NetworkSource::File(_) => None,
        };
        // index sets are validated against n again once the network is built
        let set = |key: &str| init.index_set(key, n_hint.unwrap_or(usize::MAX));
        let initial = match init.raw("kind").unwrap_or("random") {
            "polarized" => InitialSpec::Polarized { positive: set("positive")? },
            "positive_opinions" => InitialSpec::PositiveOpinions { positive: set("positive")? },
            "random" => InitialSpec::Random,
            "explicit" => {
                let actions = init
                    .raw("actions")
                    .ok_or_else(|| anyhow!("[initial] explicit needs actions"))?
                    .split(',')
                    .map(|s| parse_sign(s).map(|v| Action::from_sign(v).expect("sign is +-1")))
                    .collect::<Result<Vec<_>>>()
                    .context("[initial] actions")?;
                let opinions = init.list("opinions")?.ok_or_else(|| anyhow!("[initial] explicit needs opinions"))?;
                InitialSpec::Explicit { actions, opinions }
            }
            other => bail!("[initial] unknown kind {other:?}"),
        };

        let sch = sec("schedule");
        let schedule = match sch.raw("kind").unwrap_or("round_robin") {
            "round_robin" => ScheduleSpec::RoundRobin,
            "uniform" => ScheduleSpec::Uniform,
            "explicit" => {
                let order = sch.raw("order").ok_or_else(|| anyhow!("[schedule] explicit needs order"))?;
                let steps = order
                    .split(';')
                    .map(|step| {
                        step.split(',')
                            .map(|s| match s.trim().parse::<usize>() {
                                Ok(i) if i >= 1 => Ok(i - 1),
                                _ => Err(anyhow!("[schedule] order: bad agent {s:?}")),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                ScheduleSpec::Explicit(steps)
            }
            other => bail!("[schedule] unknown kind {other:?}"),
        };

        let st = sec("stop");
        let stop = StopSpec {
            max_steps: st.parse("max_steps")?,
            opinion_tol: st.parse("opinion_tol")?.unwrap_or(1e-10),
            window: st.parse("window")?,
            tie_tol: st.parse("tie_tol")?.unwrap_or(0.0),
            allow_unverified: st.parse("allow_unverified")?.unwrap_or(false),
        };

        let out = sec("output");
        Ok(Self {
            seed,
            seed_forced: false,
            network,
            params,
            initial,
            initial_seed: init.parse("seed")?,
            schedule,
            schedule_seed: sch.parse("seed")?,
            stop,
            out_dir: out.raw("dir").map_or_else(|| PathBuf::from("out"), PathBuf::from),
            prefix: out.raw("prefix").unwrap_or("trace").to_string(),
        })
    }

    pub fn force_seed(&mut self, seed: u64) {
        self.seed = seed;
        self.seed_forced = true;
    }

    fn stream_seed(&self, explicit: Option<u64>, stream: u64) -> u64 {
        match explicit {
            Some(s) if !self.seed_forced => s,
            _ => sub_seed(self.seed, stream),
        }
    }

    pub fn network_seed(&self) -> u64 {
        match &self.network {
            NetworkSource::Generated { seed, .. } => self.stream_seed(*seed, NETWORK_STREAM),
            NetworkSource::File(_) => 0,
        }
    }

    pub fn initial_seed(&self) -> u64 {
        self.stream_seed(self.initial_seed, INITIAL_STREAM)
    }

    pub fn schedule_seed(&self) -> u64 {
        self.stream_seed(self.schedule_seed, SCHEDULE_STREAM)
    }

    pub fn gen_spec(&self) -> Option<GenSpec> {
        let NetworkSource::Generated { kind, n, zero_diagonal, .. } = &self.network else { return None };
        let kind = match kind {
            GenKindSpec::Random => GenKind::RandomSymmetricStochastic,
            GenKindSpec::Conditioned { theorem, positive } => {
                GenKind::ConditionRescaled { theorem: *theorem, vp: positive.clone(), vn: complement(positive, *n) }
            }
            GenKindSpec::Bipartite { positive, cross } => {
                GenKind::CompleteBipartite { vp: positive.clone(), vn: complement(positive, *n), cross: *cross }
            }
        };
        Some(GenSpec { kind, n: *n, seed: self.network_seed(), zero_diagonal: *zero_diagonal })
    }

    pub fn agent_params(&self, n: usize) -> Result<Params> {
        fn spread<T: Copy>(v: &[T], n: usize, name: &str) -> Result<Vec<T>> {
            match v.len() {
                1 => Ok(vec![v[0]; n]),
                len if len == n => Ok(v.to_vec()),
                len => bail!("[params] {name} has {len} entries for {n} agents"),
            }
        }
        let p = &self.params;
        Ok(AgentParams::new(
            spread(&p.lambda, n, "lambda")?,
            spread(&p.beta, n, "beta")?,
            spread(&p.epsilon, n, "epsilon")?,
            p.alpha,
        )?)
    }

    fn network_positive(&self) -> Option<Vec<usize>> {
        match &self.network {
            NetworkSource::Generated { kind: GenKindSpec::Conditioned { positive, .. }, .. }
            | NetworkSource::Generated { kind: GenKindSpec::Bipartite { positive, .. }, .. } => Some(positive.clone()),
            _ => None,
        }
    }

    pub fn network_size(&self) -> Result<usize> {
        match &self.network {
            NetworkSource::Generated { n, .. } => Ok(*n),
            NetworkSource::File(path) => Ok(load_network::<f64>(path)?.n()),
        }
    }

    pub fn build_network(&self) -> Result<Network> {
        match &self.network {
            NetworkSource::File(path) => {
                load_network(path).with_context(|| format!("loading network {}", path.display()))
            }
            NetworkSource::Generated { n, .. } => {
                let spec = self.gen_spec().expect("generated source");
                let params = self.agent_params(*n)?;
                Ok(TwoLayerNetwork::single(spec.generate(Some(&params))?)?)
            }
        }
    }

    pub fn build_initial(&self, n: usize, seed: u64) -> Result<(State, Option<Vec<usize>>)> {
        let check = |set: &[usize]| -> Result<()> {
            match set.iter().find(|&&i| i >= n) {
                Some(i) => bail!("[initial] agent {} outside 1..={n}", i + 1),
                None => Ok(()),
            }
        };
        match &self.initial {
            InitialSpec::Polarized { positive } => {
                let vp = positive
                    .clone()
                    .or_else(|| self.network_positive())
                    .ok_or_else(|| anyhow!("[initial] polarized needs positive"))?;
                check(&vp)?;
                let vn = complement(&vp, n);
                let z = initial_state(&InitialKind::Polarized { vp: vp.clone(), vn }, n, seed)?;
                Ok((z, Some(vp)))
            }
            InitialSpec::PositiveOpinions { positive } => {
                let z: State = initial_state(&InitialKind::PositiveOpinions, n, seed)?;
                match positive {
                    Some(vp) => {
                        check(vp)?;
                        let x = (0..n).map(|i| if vp.contains(&i) { Action::Plus } else { Action::Minus }).collect();
                        Ok((PopulationState::new(x, z.opinions().to_vec())?, Some(vp.clone())))
                    }
                    None => Ok((z, self.network_positive())),
                }
            }
            InitialSpec::Random => Ok((initial_state(&InitialKind::Random, n, seed)?, self.network_positive())),
            InitialSpec::Explicit { actions, opinions } => {
                if actions.len() != n || opinions.len() != n {
                    bail!("[initial] explicit state must list {n} actions and {n} opinions");
                }
                Ok((PopulationState::new(actions.clone(), opinions.clone())?, self.network_positive()))
            }
        }
    }

    pub fn build_schedule(&self, n: usize, seed: u64) -> Result<ActivationSchedule> {
        Ok(match &self.schedule {
            ScheduleSpec::RoundRobin => ActivationSchedule::round_robin(n),
            ScheduleSpec::Uniform => ActivationSchedule::uniform_random(n, seed),
            ScheduleSpec::Explicit(steps) => ActivationSchedule::explicit(n, steps.clone())?,
        })
    }

    pub fn options(&self, n: usize) -> SimOptions<f64> {
        let mut stop = StopCriterion::for_agents(n);
        if let Some(m) = self.stop.max_steps {
            stop.max_steps = m;
        }
        stop.opinion_tol = self.stop.opinion_tol;
        stop.window = self.stop.window;
        SimOptions { stop, tie_tol: self.stop.tie_tol, allow_unverified: self.stop.allow_unverified }
    }

    pub fn build(&self) -> Result<Built> {
        let net = self.build_network()?;
        let n = net.n();
        let params = self.agent_params(n)?;
        let (z0, positive) = self.build_initial(n, self.initial_seed())?;
        Ok(Built {
            schedule: self.build_schedule(n, self.schedule_seed())?,
            options: self.options(n),
            net,
            params,
            z0,
            positive,
        })
    }

    /// Serializes the scenario with every seed resolved, so that loading the
    /// result reproduces the same run.
    pub fn to_ini(&self) -> String {
        let mut s = String::new();
        writeln!(s, "seed = {}\n", self.seed).unwrap();
        match &self.network {
            NetworkSource::File(path) => {
                let path = std::path::absolute(path).unwrap_or_else(|_| path.clone());
                writeln!(s, "[network]\nfile = {}", path.display()).unwrap()
            }
            NetworkSource::Generated { .. } => s.push_str(&self.gen_spec().expect("generated source").to_config()),
        }
        let p = &self.params;
        let eps: Vec<String> = p.epsilon.iter().map(|k| k.sign().to_string()).collect();
        writeln!(
            s,
            "\n[params]\nlambda = {}\nbeta = {}\nepsilon = {}\nalpha = {}",
            fmt_list(&p.lambda),
            fmt_list(&p.beta),
            eps.join(","),
            p.alpha
        )
        .unwrap();
        s.push_str("\n[initial]\n");
        let positive = |s: &mut String, set: &Option<Vec<usize>>| {
            if let Some(set) = set {
                writeln!(s, "positive = {}", format_index_set(set)).unwrap();
            }
        };
        match &self.initial {
            InitialSpec::Polarized { positive: set } => {
                s.push_str("kind = polarized\n");
                positive(&mut s, set);
            }
            InitialSpec::PositiveOpinions { positive: set } => {
                s.push_str("kind = positive_opinions\n");
                positive(&mut s, set);
            }
            InitialSpec::Random => s.push_str("kind = random\n"),
            InitialSpec::Explicit { actions, opinions } => {
                let a: Vec<String> = actions.iter().map(|a| a.sign().to_string()).collect();
                writeln!(s, "kind = explicit\nactions = {}\nopinions = {}", a.join(","), fmt_list(opinions)).unwrap();
            }
        }
        writeln!(s, "seed = {}", self.initial_seed()).unwrap();
        s.push_str("\n[schedule]\n");
        match &self.schedule {
            ScheduleSpec::RoundRobin => s.push_str("kind = round_robin\n"),
            ScheduleSpec::Uniform => writeln!(s, "kind = uniform\nseed = {}", self.schedule_seed()).unwrap(),
            ScheduleSpec::Explicit(steps) => {
                let order: Vec<String> = steps
                    .iter()
                    .map(|set| set.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                writeln!(s, "kind = explicit\norder = {}", order.join(";")).unwrap();
            }
        }
        let st = &self.stop;
        s.push_str("\n[stop]\n");
        if let Some(m) = st.max_steps {
            writeln!(s, "max_steps = {m}").unwrap();
        }
        if let Some(w) = st.window {
            writeln!(s, "window = {w}").unwrap();
        }
        writeln!(
            s,
            "opinion_tol = {:e}\ntie_tol = {:e}\nallow_unverified = {}",
            st.opinion_tol, st.tie_tol, st.allow_unverified
        )
        .unwrap();
        writeln!(s, "\n[output]\ndir = {}\nprefix = {}", self.out_dir.display(), self.prefix).unwrap();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Scenario {
        Scenario::parse(text, Path::new(".")).unwrap()
    }

    #[test]
    fn presets_parse_and_build() {
        for name in PRESETS {
            let sc = load(preset(name).unwrap());
            let b = sc.build().unwrap();
            assert_eq!(b.net.n(), 30);
            assert_eq!(b.params.n(), 30);
        }
    }

    #[test]
    fn round_trip_reproduces_the_build() {
        let mut sc = load(preset("example5").unwrap());
        sc.schedule = ScheduleSpec::Uniform;
        let again = load(&sc.to_ini());
        let (a, b) = (sc.build().unwrap(), again.build().unwrap());
        assert_eq!(a.net, b.net);
        assert_eq!(a.z0, b.z0);
        assert_eq!(a.schedule, b.schedule);
    }

    #[test]
    fn forced_seed_overrides_section_seeds() {
        let text = "seed = 1\n[network]\nn = 5\nseed = 9\n[params]\nlambda = 0.5\nbeta = 0.5\nepsilon = -1\n";
        let mut sc = load(text);
        assert_eq!(sc.network_seed(), 9);
        sc.force_seed(1);
        assert_eq!(sc.network_seed(), sub_seed(1, NETWORK_STREAM));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        let base = "[params]\nlambda = 0.5\nbeta = 0.5\nepsilon = -1\n[network]\nn = 4\n";
        assert!(Scenario::parse(&format!("{base}typo = 1\n"), Path::new(".")).is_err());
        assert!(Scenario::parse(&format!("{base}[extra]\n"), Path::new(".")).is_err());
        assert!(Scenario::parse("[params]\nlambda = 0.5\nbeta = 0.5\nepsilon = 0\n", Path::new(".")).is_err());
        let sc = load(&base.replace("lambda = 0.5", "lambda = 0.5,0.6"));
        assert!(sc.agent_params(4).is_err());
    }

    #[test]
    fn file_paths_survive_reserialization() {
        let text = "[network]\nfile = nets/a.net\n[params]\nlambda = 0.5\nbeta = 0.5\nepsilon = 1\n";
        let sc = Scenario::parse(text, Path::new("cfg")).unwrap();
        let again = Scenario::parse(&sc.to_ini(), Path::new("elsewhere")).unwrap();
        let NetworkSource::File(p) = again.network else { panic!("file source expected") };
        assert!(p.is_absolute() && p.ends_with("cfg/nets/a.net"));
    }

    #[test]
    fn explicit_schedule_is_one_based() {
        let text = "[network]\nn = 3\n[params]\nlambda = 0.5\nbeta = 0.5\nepsilon = 1\n\
                    [schedule]\nkind = explicit\norder = 1;2,3;1\n";
        assert_eq!(load(text).schedule, ScheduleSpec::Explicit(vec![vec![0], vec![1, 2], vec![0]]));
    }
}
