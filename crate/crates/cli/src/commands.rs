use std::io::Write;

use ionlink_core::purify::{markov_cost, run_level};
use ionlink_core::repeater::{memory_budget, pipeline, rate_budget, DephasingModel, LinkBudget, PipelineConfig};
use ionlink_core::seeding::trial_rng;
use ionlink_core::stabtool::build_parity_table;
use ionlink_core::toric::{default_grid, threshold_scan_with_progress, ThresholdConfig};
use rand::Rng;

use crate::output::{open, sig};
use crate::{Cli, CliError, Command, Dephasing, PurifySweepArgs, RepeaterArgs, TableDumpArgs, ThresholdArgs};

pub fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::PurifySweep(a) => purify_sweep(cli, a),
        Command::Repeater(a) => repeater(cli, a),
        Command::Threshold(a) => threshold(cli, a),
        Command::TableDump(a) => table_dump(cli, a),
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn purify_sweep(cli: &Cli, a: &PurifySweepArgs) -> Result<(), CliError> {
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    for &eps in a.eps.values() {
        a.noise.model(eps)?;
    }
    let command = format!("purify-sweep --levels {} --eps {} --trials {} {}", join(&a.levels), a.eps, a.trials, a.noise.flags());
    let mut out = open(cli, &command)?;
    let mut csv = csv::Writer::from_writer(&mut out);
    csv.write_record(["epsilon", "level", "infidelity", "mean_raw_pairs", "mean_time_T0", "stderr"])?;
    for (ei, &eps) in a.eps.values().iter().enumerate() {
        let noise = a.noise.model(eps)?;
        for &level in &a.levels {
            let state = run_level(level, &noise)?;
            let seed = trial_rng(cli.seed, &[ei as u64, u64::from(level.index())]).random::<u64>();
            let cost = markov_cost(level, &noise, a.trials, seed)?;
            csv.write_record([
                eps.to_string(),
                level.to_string(),
                sig(state.infidelity),
                sig(cost.mean_raw_pairs),
                sig(cost.mean_time_t0),
                sig(cost.stderr),
            ])?;
        }
    }
    csv.flush()?;
    drop(csv);
    out.flush()?;
    Ok(())
}

fn repeater(cli: &Cli, a: &RepeaterArgs) -> Result<(), CliError> {
    let noise = ionlink_core::NoiseModel::new(a.eps, a.p1, a.p2, a.pm)?.with_memory_swap(!a.no_memory_swap);
    let config = PipelineConfig {
        initial_level: a.initial_level,
        m: a.m,
        p: a.p,
        repurify_level: a.repurify_level,
        tiers: a.chain,
        fusion_lies: a.fusion_lies,
    };
    let model = match a.dephasing {
        Dephasing::Exponential => DephasingModel::Exponential,
        Dephasing::Gaussian => DephasingModel::Gaussian,
        Dephasing::Window => DephasingModel::FixedWindow(a.window),
    };
    let report = pipeline(&config, &noise)?;
    let budget = rate_budget(&LinkBudget::new(a.spacing_km))?;
    let first_cost = report.stages[0].cost.expect("stage i is a purification");
    let min_rate = memory_budget(model, a.t2, first_cost, a.floor)?;

    let command = format!(
        "repeater --eps {} --p1 {} --p2 {} --pm {}{}{} --chain {} --m {} --p {} --initial-level {} --repurify-level {} --spacing-km {} --t2 {} --floor {} --dephasing {} --window {}",
        a.eps,
        a.p1,
        a.p2,
        a.pm,
        if a.no_memory_swap { " --no-memory-swap" } else { "" },
        if a.fusion_lies { " --fusion-lies" } else { "" },
        a.chain,
        a.m,
        a.p,
        a.initial_level,
        a.repurify_level,
        a.spacing_km,
        a.t2,
        a.floor,
        format!("{:?}", a.dephasing).to_lowercase(),
        a.window,
    );
    let mut out = open(cli, &command)?;
    let mut csv = csv::Writer::from_writer(&mut out);
    csv.write_record(["stage", "fidelity", "error_1", "error_2", "error_3", "cost"])?;
    for s in &report.stages {
        let [e1, e2, e3] = s.error_channels;
        csv.write_record([s.stage.to_string(), sig(s.fidelity), sig(e1), sig(e2), sig(e3), s.cost.map(sig).unwrap_or_default()])?;
    }
    csv.flush()?;
    drop(csv);
    writeln!(out, "# total_cost {}", sig(report.total_cost))?;
    writeln!(
        out,
        "# budget spacing_km {} loss_db {} success_scaling {} max_cycle_rate_hz {} advised_spacing_km {}",
        a.spacing_km,
        sig(budget.loss_db),
        sig(budget.success_scaling),
        sig(budget.max_cycle_rate_hz),
        sig(budget.advised_spacing_km)
    )?;
    writeln!(out, "# memory t2_s {} floor {} cost {} min_rate_hz {}", a.t2, a.floor, sig(first_cost), sig(min_rate))?;
    out.flush()?;
    Ok(())
}

fn threshold(cli: &Cli, a: &ThresholdArgs) -> Result<(), CliError> {
    let mut cfg = if a.full { ThresholdConfig::full(a.method, a.level, cli.seed) } else { ThresholdConfig::desk(a.method, a.level, cli.seed) };
    cfg.noise = a.noise.model(0.1)?;
    if let Some(sizes) = &a.sizes {
        cfg.sizes = sizes.clone();
    }
    if let Some(trials) = a.trials {
        cfg.trials = trials;
    }
    if let Some(grid) = &a.eps {
        cfg.epsilons = grid.values().to_vec();
    }
    cfg.rounds_per_size = a.rounds_per_size;
    cfg.validate()?;
    let eps_text = a.eps.as_ref().map_or_else(|| join(&default_grid(a.method, a.level)), ToString::to_string);
    let command = format!(
        "threshold --method {} --level {} --L {} --eps {} --trials {} --rounds-per-size {} {}",
        a.method,
        a.level,
        join(&cfg.sizes),
        eps_text,
        cfg.trials,
        cfg.rounds_per_size,
        a.noise.flags()
    );
    let total = cfg.epsilons.len() * cfg.sizes.len();
    let done = std::sync::atomic::AtomicUsize::new(0);
    let progress = |p: &ionlink_core::toric::CurvePoint| {
        let k = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
        if !a.quiet {
            eprintln!("[{k}/{total}] epsilon {} L {} rate {:.4}", p.epsilon, p.size, p.rate());
        }
    };
    let scan = threshold_scan_with_progress(&cfg, &progress)?;

    let mut out = open(cli, &command)?;
    let mut csv = csv::Writer::from_writer(&mut out);
    csv.write_record(["epsilon", "L", "trials", "failures", "rate", "stderr"])?;
    for p in &scan.points {
        csv.write_record([p.epsilon.to_string(), p.size.to_string(), p.trials.to_string(), p.failures.to_string(), sig(p.rate()), sig(p.stderr())])?;
    }
    csv.flush()?;
    drop(csv);
    for c in &scan.crossings {
        let x = c.epsilon.map_or_else(|| "none".to_string(), sig);
        writeln!(out, "# crossing L {}/{} epsilon {x}", c.smaller, c.larger)?;
    }
    match (scan.estimate, scan.interval) {
        (Some(x), Some((lo, hi))) => writeln!(out, "# estimate {} interval_95 {} {}", sig(x), sig(lo), sig(hi))?,
        (Some(x), None) => writeln!(out, "# estimate {} interval_95 none", sig(x))?,
        (None, _) => writeln!(out, "# warning: the grid does not bracket a crossing for every pair of sizes")?,
    }
    out.flush()?;
    Ok(())
}

fn table_dump(cli: &Cli, a: &TableDumpArgs) -> Result<(), CliError> {
    let noise = a.noise.model(a.eps)?;
    let table = build_parity_table(a.method, a.level, &noise, a.basis, a.qubit_budget)?;
    let command = format!(
        "table-dump --method {} --level {} --basis {:?} --eps {} --qubit-budget {} {}",
        a.method,
        a.level,
        a.basis,
        a.eps,
        a.qubit_budget,
        a.noise.flags()
    );
    let mut out = open(cli, &command)?;
    let mut csv = csv::Writer::from_writer(&mut out);
    csv.write_record(["pauli", "lie", "probability"])?;
    for e in table.entries() {
        csv.write_record([e.pauli.to_string(), u8::from(e.lie).to_string(), sig(e.probability)])?;
    }
    csv.flush()?;
    drop(csv);
    writeln!(out, "# error_mass {} lie_probability {}", sig(table.error_mass()), sig(table.lie_probability()))?;
    out.flush()?;
    Ok(())
}
