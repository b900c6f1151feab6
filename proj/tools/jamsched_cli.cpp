// Command-line front end: deploy worlds, run schedulers, analyze lifetime
// limits, sweep parameters to CSV, and dump the per-slot optimization model.
// Configuration comes from the sectioned key = value files in configs/.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jamsched/config_io.hpp"
#include "jamsched/energy.hpp"
#include "jamsched/experiment.hpp"
#include "jamsched/greedy.hpp"
#include "jamsched/ilp.hpp"
#include "jamsched/lifetime.hpp"
#include "jamsched/mrs.hpp"
#include "jamsched/sinr.hpp"
#include "jamsched/world.hpp"

namespace {

using namespace jamsched;

// Writes to the path when given, stdout otherwise.
void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + out_path + " for writing");
  out << text;
  if (!out) throw ConfigError("write to " + out_path + " failed");
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Builds the world a config describes: arena from [geometry], fleet from
// [jammers], randomness from the seed.
WorldModel world_from_spec(const ExperimentSpec& spec, std::uint64_t seed) {
  WorldModel arena = make_world(spec.storage, spec.fence, spec.network.lambda);
  return deploy_jammers(arena, spec.jammer_count, seed, spec.network,
                        spec.lifespans * spec.network.c, spec.rechargeable_fraction);
}

std::string dump_world(const WorldModel& world) {
  std::string out = "id,x,y,kind,battery,capacity\n";
  for (const Jammer& j : world.jammers) {
    out += std::to_string(j.id);
    out += ',';
    out += format_value(j.position.x);
    out += ',';
    out += format_value(j.position.y);
    out += ',';
    out += j.kind == JammerKind::Rechargeable ? "rechargeable" : "unrechargeable";
    out += ',';
    out += std::to_string(j.battery);
    out += ',';
    out += std::to_string(j.capacity);
    out += '\n';
  }
  return out;
}

// One line per slot, the activated ids separated by spaces. An empty plan
// serializes to nothing, matching a lifetime of zero.
std::string dump_slots(const std::vector<std::vector<int>>& slots) {
  std::string out;
  for (const std::vector<int>& slot : slots) {
    for (std::size_t i = 0; i < slot.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(slot[i]);
    }
    out += '\n';
  }
  return out;
}

// The all-active policy as an explicit plan, so the dump format is the same
// for every algorithm.
Schedule baseline_schedule(const WorldModel& world, const NetworkConfig& cfg,
                           long long max_slots) {
  ReliabilityEvaluator eval(world, cfg);
  std::vector<Jammer> jammers = world.jammers;
  Schedule s;
  while (static_cast<long long>(s.slots.size()) < max_slots) {
    std::vector<int> active;
    for (const Jammer& j : jammers)
      if (j.battery >= cfg.c) active.push_back(j.id);
    if (active.empty() || !eval.evaluate_indices(eval.indices_for_ids(active)).reliable) break;
    s.deltas.push_back(energy_delta(active, classify(jammers, cfg), cfg));
    apply_slot(jammers, active, cfg);
    s.slots.push_back(std::move(active));
  }
  s.termination = static_cast<long long>(s.slots.size()) == max_slots
                      ? Termination::SlotCapReached
                      : Termination::Dead;
  for (const Jammer& j : jammers) s.final_batteries.push_back(j.battery);
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"Friendly-jammer deployment and lifetime scheduling"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 1;

  CLI::App* deploy = app.add_subcommand("deploy", "Place a seeded fleet and print it");
  deploy->add_option("--config", config_path, "configuration file")->required();
  deploy->add_option("--seed", seed, "deployment seed (default 1)");
  deploy->add_option("--out", out_path, "write here instead of stdout");

  std::string algorithm = "greedy";
  long long max_slots = -1;
  CLI::App* schedule = app.add_subcommand("schedule", "Run a scheduler and print the slot plan");
  schedule->add_option("--config", config_path, "configuration file")->required();
  schedule->add_option("--algorithm", algorithm, "greedy, mrs or baseline (default greedy)")
      ->check(CLI::IsMember({"greedy", "mrs", "baseline"}));
  schedule->add_option("--max-slots", max_slots, "slot budget (default from config)");
  schedule->add_option("--seed", seed, "deployment seed (default 1)");
  schedule->add_option("--out", out_path, "write the plan here instead of stdout");

  CLI::App* analyze = app.add_subcommand("analyze", "Lifetime limits of a deployment");
  analyze->add_option("--config", config_path, "configuration file")->required();
  analyze->add_option("--seed", seed, "deployment seed (default 1)");
  analyze->add_option("--out", out_path, "write here instead of stdout");

  std::string spec_path;
  CLI::App* sweep = app.add_subcommand("sweep", "Run the configured sweep and emit CSV");
  sweep->add_option("--spec", spec_path, "sweep configuration file")->required();
  sweep->add_option("--out", out_path, "write the CSV here instead of stdout");

  CLI::App* export_ilp =
      app.add_subcommand("export-ilp", "Dump the first slot's optimization model as text");
  export_ilp->add_option("--config", config_path, "configuration file")->required();
  export_ilp->add_option("--seed", seed, "deployment seed (default 1)");
  export_ilp->add_option("--out", out_path, "write here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  if (*deploy) {
    const ExperimentSpec spec = load_experiment_config(config_path);
    write_output(out_path, dump_world(world_from_spec(spec, seed)));
    return 0;
  }

  if (*schedule) {
    const ExperimentSpec spec = load_experiment_config(config_path);
    const WorldModel world = world_from_spec(spec, seed);
    const long long budget = max_slots > 0 ? max_slots : spec.max_slots;

    Schedule plan;
    if (algorithm == "greedy") {
      plan = greedy_schedule(world, spec.network, budget);
    } else if (algorithm == "mrs") {
      plan = mrs_schedule(world, spec.network).schedule;
    } else {
      plan = baseline_schedule(world, spec.network, budget);
    }

    write_output(out_path, dump_slots(plan.slots));
    std::fprintf(stderr, "lifetime %lld (%s)\n", plan.lifetime(),
                 plan.termination == Termination::SlotCapReached ? "slot cap reached" : "dead");
    return 0;
  }

  if (*analyze) {
    const ExperimentSpec spec = load_experiment_config(config_path);
    const WorldModel world = world_from_spec(spec, seed);
    const NetworkConfig& cfg = spec.network;

    long long rechargeable = 0;
    std::vector<int> everyone;
    for (const Jammer& j : world.jammers) {
      everyone.push_back(j.id);
      if (j.kind == JammerKind::Rechargeable) ++rechargeable;
    }

    std::string report;
    report += "jammers: " + std::to_string(world.jammers.size()) + " (rechargeable " +
              std::to_string(rechargeable) + ")\n";
    report += std::string("full fleet reliable: ") +
              (is_reliable(everyone, world, cfg).reliable ? "yes" : "no") + "\n";

    const ActiveCountBounds bounds = active_count_bounds(world, cfg);
    report += "active-count bounds: [" + std::to_string(bounds.lower) + ", " +
              std::to_string(bounds.upper) + "]\n";

    const LifetimeCertificate cert = infinite_lifetime_certificate(world, cfg);
    report += "min active jammers: " + std::to_string(cert.min_active) + "\n";
    report += "baseline lifetime: " + std::to_string(baseline_lifetime(world, cfg)) + "\n";
    switch (cert.verdict) {
      case LifetimeVerdict::Infinite:
        report += "verdict: infinite (rotation of " + std::to_string(cert.plan.size()) +
                  " disjoint reliable sets)\n";
        for (const std::vector<int>& pack : cert.plan) {
          report += "  rotation set:";
          for (int id : pack) report += ' ' + std::to_string(id);
          report += '\n';
        }
        break;
      case LifetimeVerdict::FiniteNecessaryFail:
        report += "verdict: finite (rechargeable " + std::to_string(cert.rechargeable_count) +
                  " < required " + std::to_string(cert.required) + ")\n";
        break;
      case LifetimeVerdict::FiniteNotFound:
        report += "verdict: undetermined (enough rechargeable jammers, no disjoint rotation "
                  "found)\n";
        break;
    }
    write_output(out_path, report);
    return 0;
  }

  if (*sweep) {
    const ExperimentSpec spec = load_experiment_config(spec_path);
    write_output(out_path, emit_csv(run_experiment(spec)));
    return 0;
  }

  if (*export_ilp) {
    const ExperimentSpec spec = load_experiment_config(config_path);
    const WorldModel world = world_from_spec(spec, seed);
    const Classification cls = classify(world.jammers, spec.network);
    write_output(out_path, export_model(build_slot_ilp(world, cls, spec.network)));
    return 0;
  }

  return 0;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const jamsched::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
