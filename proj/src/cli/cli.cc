// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/cli/cli.h"

#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "dereverb/cli/commands.h"
#include "dereverb/common/error.h"

namespace dereverb::cli {
namespace {

int DefaultThreads() {
  const char* env = std::getenv(kThreadsEnv);
  if (env == nullptr || *env == '\0') return 1;
  try {
    return std::stoi(env);
  } catch (const std::exception&) {
    Fail(ErrorCode::kInvalidArgument,
         std::string(kThreadsEnv) + " is not an integer: " + env);
  }
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Speech dereverberation with joint dry-signal and RIR estimation",
               "dereverb"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  PrepareOptions prepare;
  CLI::App* prep = app.add_subcommand("prepare", "Ingest RIRs and split them by group");
  prep->add_option("--rir-dir", prepare.rir_dir, "Directory of RIR WAV files")->required();
  prep->add_option("--group-pattern", prepare.group_pattern,
                   "Regex on file stems; capture group 1 is the group key")
      ->capture_default_str();
  prep->add_option("--val", prepare.val, "Validation RIRs")->capture_default_str();
  prep->add_option("--test", prepare.test, "Test RIRs")->capture_default_str();
  prep->add_option("--cap", prepare.cap, "Max RIRs kept per group")->capture_default_str();
  prep->add_option("--big-group", prepare.big_group,
                   "Groups with more retained RIRs go to train")
      ->capture_default_str();
  prep->add_option("--seed", prepare.seed, "Random seed")->capture_default_str();
  prep->add_option("--out", prepare.out, "Manifest path")->capture_default_str();

  SynthOptions synth;
  CLI::App* syn = app.add_subcommand("synth", "Pair dry speech with RIRs and cache examples");
  syn->add_option("--manifest", synth.manifest, "Manifest from prepare")->required();
  syn->add_option("--dry-dir", synth.dry_dir,
                  "Dry speech WAVs (optional train/ val/ test/ subdirectories)")
      ->required();
  syn->add_option("--rirs-per-dry", synth.rirs_per_dry, "RIRs drawn per dry file")
      ->capture_default_str();
  syn->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  syn->add_option("--out-dir", synth.out_dir, "Output directory")->required();

  TrainOptions train;
  CLI::App* tr = app.add_subcommand("train", "Train a model on cached examples");
  tr->add_option("--manifest", train.manifest, "Manifest from synth")->required();
  tr->add_option("--model", train.model, "rir, dry-gru, dry-unet or joint")
      ->capture_default_str();
  tr->add_option("--scale", train.scale, "desk or paper")->capture_default_str();
  tr->add_option("--epochs", train.epochs, "Epochs")->capture_default_str();
  tr->add_option("--lr", train.lr, "Adam learning rate")->capture_default_str();
  tr->add_option("--batch", train.batch, "Batch size")->capture_default_str();
  tr->add_option("--weights", train.weights, "Loss weights w_dry,w_rir,w_rec")
      ->delimiter(',')
      ->expected(3)
      ->capture_default_str();
  tr->add_option("--seed", train.seed, "Random seed")->capture_default_str();
  CLI::Option* threads_opt = tr->add_option(
      "--threads", train.threads,
      std::string("Worker threads (default from ") + kThreadsEnv + ", else 1)");
  tr->add_option("--checkpoint-every", train.checkpoint_every,
                 "Also checkpoint every N epochs (0: final only)")
      ->capture_default_str();
  tr->add_option("--resume", train.resume, "Checkpoint to continue from");
  tr->add_option("--out", train.out, "Output directory")->required();

  GradcheckOptions grad;
  CLI::App* gc = app.add_subcommand("gradcheck", "Finite-difference check of tiny models");
  gc->add_option("--model", grad.model, "Model kind or all")->capture_default_str();
  gc->add_option("--seed", grad.seed, "Random seed")->capture_default_str();

  EvalOptions ev;
  CLI::App* evc = app.add_subcommand("eval", "Evaluate a checkpoint on one split");
  evc->add_option("--ckpt", ev.ckpt, "Checkpoint")->required();
  evc->add_option("--manifest", ev.manifest, "Manifest from synth")->required();
  evc->add_option("--split", ev.split, "train, val or test")->capture_default_str();
  evc->add_option("--report", ev.report, "Report CSV path")->capture_default_str();
  evc->add_option("--audition-dir", ev.audition_dir,
                  "Write reverberant, dry and estimated WAVs here");
  evc->add_option("--audition-count", ev.audition_count, "Examples to audition")
      ->capture_default_str();

  InfoOptions info;
  CLI::App* inf = app.add_subcommand("info", "Describe a checkpoint or model");
  inf->add_option("--ckpt", info.ckpt, "Checkpoint");
  inf->add_option("--model", info.model, "Model kind, when no checkpoint is given");
  inf->add_option("--scale", info.scale, "desk or paper")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*prep) RunPrepare(prepare, out, err);
    if (*syn) RunSynth(synth, out, err);
    if (*tr) {
      if (threads_opt->count() == 0) train.threads = DefaultThreads();
      RunTrain(train, out, err);
    }
    if (*gc) return RunGradcheck(grad, out);
    if (*evc) RunEval(ev, out, err);
    if (*inf) RunInfo(info, out);
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace dereverb::cli
