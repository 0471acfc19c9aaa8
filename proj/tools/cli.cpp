// Copyright 2026 The IVLMap Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ivlmap/archive.hpp"
#include "ivlmap/config.hpp"
#include "ivlmap/error.hpp"
#include "ivlmap/eval.hpp"
#include "ivlmap/figures.hpp"
#include "ivlmap/io.hpp"
#include "ivlmap/localization.hpp"
#include "ivlmap/navlang.hpp"
#include "ivlmap/scenegen.hpp"

#ifndef IVLMAP_VERSION
#define IVLMAP_VERSION "0.0.0"
#endif

namespace ivlmap::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::string config;
  // synth
  std::string out_dir;
  std::uint64_t seed = 1;
  double sigma = 0.0;
  bool fixture = false;
  // build
  std::string dataset;
  std::string out_map;
  std::string masks;
  std::string frame_log;
  std::string export_masks;
  // query / navigate / eval / export-fig
  std::string map;
  std::string name;
  int index = 0;
  std::string color;
  std::string ordering;
  std::string agent;
  std::string program;
  std::string command;
  std::string start;
  double heading = 0.0;
  std::string translator;
  std::string csv;
  std::string overlay;
  std::string report;
  std::string trajectory;
};

io::RunConfig load_run_config(const Options& o) {
  return o.config.empty() ? io::default_config() : io::load_config(o.config);
}

Cell parse_cell(const std::string& text, const std::string& option) {
  int px = 0, py = 0;
  char comma = 0;
  std::istringstream is(text);
  if (!(is >> px >> comma >> py) || comma != ',' || !is.eof())
    throw Error(option + ": expected 'row,col', got '" + text + "'");
  return {px, py};
}

std::string cell_text(Cell c) {
  return "(" + std::to_string(c.px) + ", " + std::to_string(c.py) + ")";
}

void write_text(const std::string& path, const std::string& text) {
  io::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

/// Nearest traversable cell to `want`, searching the whole grid.
Cell snap_start(Cell want, const mapping::OccupancyGrid& occ, double cell_size) {
  const double radius = std::hypot(occ.rows(), occ.cols()) * cell_size;
  return localization::approach_cell(want, occ, cell_size, radius);
}

int cmd_synth(const Options& o, std::ostream& out) {
  const auto cfg = load_run_config(o);
  auto spec = o.fixture ? scenegen::fixture_scene_spec(o.sigma)
                        : scenegen::random_scene_spec(o.seed, o.sigma);
  if (!o.fixture) spec.seed = o.seed;
  if (!o.config.empty()) {
    spec.grid = cfg.grid;
    spec.intrinsics = cfg.camera;
    spec.categories = cfg.categories;
    spec.colors = cfg.colors;
  }
  const auto scene = scenegen::make_scene(spec);
  const auto manifest = io::write_scene_dataset(o.out_dir, scene);
  out << "wrote " << manifest.string() << " (" << scene.spec.path.size() << " frames, "
      << scene.objects.size() << " objects)\n";
  for (const auto& obj : scene.objects)
    out << "  object " << obj.id << ": " << obj.color << " " << obj.category << " cells "
        << cell_text(obj.min) << "-" << cell_text(obj.max) << "\n";
  return kExitOk;
}

int cmd_build(const Options& o, std::ostream& out) {
  const auto cfg = load_run_config(o);
  const auto ds = io::load_dataset(o.dataset);
  if (ds.frames.empty()) throw FormatError(o.dataset + ": dataset has no frames");
  const vocab::Vocabulary cats(ds.categories, vocab::VocabularyKind::category);
  const vocab::Vocabulary cols(ds.colors, vocab::VocabularyKind::color);
  const auto ecat = io::read_label_embeddings(ds.resolve(ds.category_embeddings), cats);
  const auto ecol = io::read_label_embeddings(ds.resolve(ds.color_embeddings), cols);
  if (ecat.dim != ecol.dim)
    throw FormatError(ds.resolve(ds.color_embeddings).string() + ": width " +
                      std::to_string(ecol.dim) + " differs from category embeddings (" +
                      std::to_string(ecat.dim) + ")");
  const auto grid = o.config.empty() ? ds.grid : cfg.grid;
  auto bundle = mapping::init_maps(grid, ecat.dim);
  const mapping::IntegrationOptions iopt{ds.intrinsics, cfg.max_depth_m};
  std::optional<std::ofstream> log;
  if (!o.frame_log.empty()) {
    log.emplace(o.frame_log);
    if (!*log) throw Error("--log: cannot write " + o.frame_log);
  }
  mapping::FrameStats total;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto frame = io::load_frame(ds, i);
    if (frame.embedding.channels() != ecat.dim)
      throw FormatError(ds.resolve(ds.frames[i].embedding).string() + ": " +
                        std::to_string(frame.embedding.channels()) + " channels, label embeddings have " +
                        std::to_string(ecat.dim));
    const auto st = mapping::integrate_frame(bundle, frame, iopt);
    if (log) *log << st.to_json_line(i) << "\n";
    total += st;
  }
  auto inputs = instance::make_inputs(std::move(bundle), cats, cols, ecat, ecol);
  instance::MaskSet masks;
  std::string mask_source = "surrogate";
  const std::string mask_file = !o.masks.empty() ? o.masks
                                : ds.masks        ? ds.resolve(*ds.masks).string()
                                                  : std::string();
  if (!mask_file.empty()) {
    try {
      masks = io::masks_from_records(io::read_mask_records(mask_file), grid.rows, grid.cols);
    } catch (const FormatError& e) {
      const std::string what = e.what();
      throw FormatError(what.rfind(mask_file, 0) == 0 ? what : mask_file + ": " + what);
    }
    mask_source = "external";
  } else {
    masks = instance::surrogate_segment(inputs.category_labels, cfg.thresholds.min_mask_area);
  }
  io::MapArchive archive;
  archive.map = instance::build_ivlmap(std::move(inputs), masks, cfg.fusion());
  archive.provenance = {io::dataset_hash(ds), io::config_hash(cfg), IVLMAP_VERSION, mask_source};
  io::save_map(o.out_map, archive);
  if (!o.export_masks.empty()) io::write_mask_records(o.export_masks, archive.map.records);

  const auto& recs = archive.map.records;
  const auto labeled = std::count_if(recs.begin(), recs.end(), [](const auto& r) { return r.labeled(); });
  out << "frames " << ds.size() << ", pixels used " << total.used << " of " << total.pixels
      << " (depth " << total.skipped_depth << ", range " << total.skipped_range << ", height "
      << total.skipped_height << ", bounds " << total.skipped_bounds << ")\n";
  out << "masks " << masks.masks.size() << " (" << mask_source << "), labeled " << labeled << "\n";
  for (const auto& r : recs)
    out << "  " << r.label_id << ": " << r.label << " (" << r.color << ") area " << r.area
        << " same-class " << r.num_of_same_class << "\n";
  out << "wrote " << o.out_map << "\n";
  return kExitOk;
}

std::optional<std::string> color_arg(const std::string& c) {
  if (c.empty() || c == "None" || c == "none") return std::nullopt;
  return c;
}

localization::Ordering ordering_arg(const std::string& text, localization::Ordering fallback) {
  if (text.empty()) return fallback;
  const auto o = localization::parse_ordering(text);
  if (!o) throw Error("--ordering: expected nearest or left_to_right, got '" + text + "'");
  return *o;
}

int cmd_query(const Options& o, std::ostream& out) {
  const auto cfg = load_run_config(o);
  const auto archive = io::load_map(o.map);
  const auto& map = archive.map;
  const auto settings = cfg.eval_settings(map.categories);
  const auto occ = eval::occupancy_for(map, settings);
  const auto ordering = ordering_arg(o.ordering, cfg.ordering);
  const Cell agent = o.agent.empty() ? Cell{map.bundle.grid.rows / 2, map.bundle.grid.cols / 2}
                                     : parse_cell(o.agent, "--agent");
  const localization::ObjAttr attr{o.name, o.index, color_arg(o.color)};
  if (attr.instance_idx < 0) throw Error("index: must be >= 0, got " + std::to_string(o.index));
  const std::size_t i = localization::select_record(attr, map, agent, ordering);
  const auto ref = localization::resolve(attr, map, agent, ordering, occ);
  const auto& rec = map.records[i];
  const auto& c = map.centroids[i];
  out << "query " << localization::to_string(attr) << " ordering "
      << localization::to_string(ordering) << "\n";
  out << "record " << rec.label_id << ": " << rec.label << " (" << rec.color << ")"
      << " area " << rec.area << " bbox [" << rec.bbox[0] << ", " << rec.bbox[1] << ", "
      << rec.bbox[2] << ", " << rec.bbox[3] << "]\n";
  out << std::fixed << std::setprecision(2) << "centroid (" << c.px << ", " << c.py << ")\n";
  out << "goal " << cell_text(ref.goal_cell) << "\n";
  out << "approach " << cell_text(ref.approach_cell) << "\n";
  return kExitOk;
}

int cmd_navigate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto cfg = load_run_config(o);
  const auto archive = io::load_map(o.map);
  const auto& map = archive.map;
  const auto settings = cfg.eval_settings(map.categories);
  const auto occ = eval::occupancy_for(map, settings);
  const double s = map.bundle.grid.cell_size;

  navlang::NavProgram program;
  if (!o.program.empty()) {
    const auto bytes = io::read_file(o.program);
    try {
      program = navlang::parse_program(std::string(bytes.begin(), bytes.end()));
    } catch (const navlang::ParseError& e) {
      throw FormatError(o.program + ":" + navlang::to_string(e.span()) + ": " + e.detail());
    }
  } else if (!o.translator.empty()) {
    navlang::TranslatorEndpoint ep = cfg.translator;
    const auto colon = o.translator.rfind(':');
    if (colon == std::string::npos) throw Error("--translator: expected host:port");
    ep.host = o.translator.substr(0, colon);
    try {
      ep.port = std::stoi(o.translator.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error("--translator: bad port in '" + o.translator + "'");
    }
    auto tr = navlang::external_translate(o.command, ep, map.categories, map.colors);
    for (const auto& w : tr.warnings) err << "warning: " << w << "\n";
    program = std::move(tr.program);
  } else {
    auto ex = navlang::extract_attributes(o.command, map.categories, map.colors);
    for (const auto& w : ex.warnings) err << "warning: " << w << "\n";
    out << "attributes " << navlang::format_tuples(ex.tuples) << "\n";
    program = navlang::parse_program(navlang::print_program(navlang::visit_program(ex.tuples)));
  }
  out << "program:\n" << navlang::print_program(program);

  const Cell want = o.start.empty() ? Cell{map.bundle.grid.rows / 2, map.bundle.grid.cols / 2}
                                    : parse_cell(o.start, "--start");
  const Cell start = snap_start(want, occ, s);
  navigation::Navigator nav(map, occ, settings.nav, {start, o.heading});
  const auto result = navlang::interpret(program, nav);
  for (const auto& line : result.log) out << line << "\n";
  const auto& agent = nav.agent();
  out << "final " << cell_text(agent.cell) << " heading " << agent.heading_deg << "\n";
  if (!o.csv.empty()) write_text(o.csv, io::trajectory_csv(nav.trajectory(), map.bundle.grid));
  if (!o.overlay.empty())
    io::write_ppm(o.overlay, io::render_trajectory(map, occ, nav.trajectory()));
  if (!result.ok()) {
    err << "error: " << *result.error << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

struct SceneRun {
  std::string name;
  eval::Metrics metrics;
  eval::AccuracyReport accuracy;
  double pixel_accuracy = 0.0;
};

int cmd_eval(const Options& o, std::ostream& out) {
  const auto cfg = load_run_config(o);
  std::vector<SceneRun> runs;
  std::vector<eval::TaskOutcome> all;
  auto run_scene = [&](const std::string& name, const scenegen::Scene& scene,
                       const instance::IvlMap& map) {
    const auto settings = cfg.eval_settings(map.categories);
    const auto occ = eval::occupancy_for(map, settings);
    const auto tasks = eval::make_tasks(scene, cfg.suite.tasks_per_scene, cfg.suite.task_seed);
    std::vector<eval::TaskOutcome> outcomes;
    for (const auto& t : tasks) outcomes.push_back(eval::run_task(map, occ, t, settings));
    all.insert(all.end(), outcomes.begin(), outcomes.end());
    runs.push_back({name, eval::evaluate(outcomes), eval::instance_accuracy(map, scene),
                    eval::pixel_accuracy(map, scene)});
  };
  if (!o.map.empty()) {
    if (o.dataset.empty()) throw Error("--dataset: required with --map (ground-truth scene)");
    const auto ds = io::load_dataset(o.dataset);
    if (!ds.scene) throw FormatError(o.dataset + ": manifest has no ground-truth scene");
    const auto bytes = io::read_file(ds.resolve(*ds.scene));
    json sj;
    try {
      sj = json::parse(bytes.begin(), bytes.end());
    } catch (const json::exception& e) {
      throw FormatError(ds.resolve(*ds.scene).string() + ": " + e.what());
    }
    const auto scene = scenegen::make_scene(io::scene_spec_from_json(sj));
    const auto archive = io::load_map(o.map);
    run_scene(o.map, scene, archive.map);
  } else {
    for (auto seed : cfg.suite.seeds) {
      auto spec = scenegen::random_scene_spec(seed, cfg.suite.noise_sigma);
      spec.grid = cfg.grid;
      spec.intrinsics = cfg.camera;
      const auto scene = scenegen::make_scene(spec);
      const auto map = scenegen::build_scene_map(scene, cfg.fusion(), cfg.max_depth_m);
      run_scene("seed " + std::to_string(seed), scene, map);
    }
  }
  const auto total = eval::evaluate(all);
  out << std::fixed << std::setprecision(4);
  for (const auto& r : runs)
    out << r.name << ": SN " << r.metrics.sn << "/" << r.metrics.subgoals << " SR " << r.metrics.sr
        << " label acc " << r.accuracy.label_accuracy() << " color acc "
        << r.accuracy.color_accuracy() << " pixel acc " << r.pixel_accuracy << "\n";
  out << eval::format_metrics(total);
  if (!o.report.empty()) {
    json scenes = json::array();
    for (const auto& r : runs)
      scenes.push_back({{"name", r.name},
                        {"metrics", json::parse(eval::metrics_json(r.metrics))},
                        {"label_accuracy", r.accuracy.label_accuracy()},
                        {"color_accuracy", r.accuracy.color_accuracy()},
                        {"pixel_accuracy", r.pixel_accuracy}});
    const json rep = {{"total", json::parse(eval::metrics_json(total))}, {"scenes", scenes}};
    write_text(o.report, rep.dump(2) + "\n");
  }
  return kExitOk;
}

navigation::Trajectory read_trajectory_csv(const std::string& path) {
  const auto bytes = io::read_file(path);
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  std::string line;
  navigation::Trajectory t;
  int n = 0;
  while (std::getline(in, line)) {
    if (++n == 1 || line.empty()) continue;
    std::istringstream ls(line);
    std::string step, px, py;
    std::getline(ls, step, ',');
    std::getline(ls, px, ',');
    std::getline(ls, py, ',');
    try {
      t.steps.push_back({{std::stoi(px), std::stoi(py)}, 0.0, navigation::Event::move, {}});
    } catch (const std::exception&) {
      throw FormatError(path + ":" + std::to_string(n) + ": malformed trajectory row");
    }
  }
  return t;
}

int cmd_export_fig(const Options& o, std::ostream& out) {
  const auto cfg = load_run_config(o);
  const auto archive = io::load_map(o.map);
  const auto& map = archive.map;
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  io::write_ppm(dir / "bev.ppm", io::render_bev(map.bundle));
  io::write_ppm(dir / "semantic.ppm", io::render_semantic(map));
  io::write_ppm(dir / "instances.ppm", io::render_instances(map));
  out << "wrote " << (dir / "bev.ppm").string() << ", " << (dir / "semantic.ppm").string() << ", "
      << (dir / "instances.ppm").string() << "\n";
  if (!o.trajectory.empty()) {
    const auto occ = eval::occupancy_for(map, cfg.eval_settings(map.categories));
    io::write_ppm(dir / "trajectory.ppm",
                  io::render_trajectory(map, occ, read_trajectory_csv(o.trajectory)));
    out << "wrote " << (dir / "trajectory.ppm").string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Instance-aware visual-language map engine", "ivlmap"};
  app.set_version_flag("--version", IVLMAP_VERSION);
  app.require_subcommand(1);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic RGB-D dataset");
  synth->add_option("--out", o.out_dir, "Output directory")->required();
  synth->add_option("--seed", o.seed, "Scene seed");
  synth->add_option("--sigma", o.sigma, "Embedding noise standard deviation")->check(CLI::NonNegativeNumber);
  synth->add_flag("--fixture", o.fixture, "Use the hand-placed fixture room");
  synth->add_option("--config", o.config, "Run configuration (JSON)");

  auto* build = app.add_subcommand("build", "Build a map archive from a dataset");
  build->add_option("--dataset", o.dataset, "Dataset manifest")->required();
  build->add_option("--out", o.out_map, "Output map archive")->required();
  build->add_option("--config", o.config, "Run configuration (JSON)");
  build->add_option("--masks", o.masks, "External mask records (JSON)");
  build->add_option("--log", o.frame_log, "Per-frame statistics (JSON lines)");
  build->add_option("--export-masks", o.export_masks, "Write the labeled mask records");

  auto* query = app.add_subcommand("query", "Resolve an attribute triple");
  query->add_option("--map", o.map, "Map archive")->required();
  query->add_option("name", o.name, "Object category")->required();
  query->add_option("index", o.index, "Ordinal, 0 for the nearest");
  query->add_option("color", o.color, "Color or None");
  query->add_option("--ordering", o.ordering, "nearest or left_to_right");
  query->add_option("--agent", o.agent, "Agent cell 'row,col'");
  query->add_option("--config", o.config, "Run configuration (JSON)");

  auto* navigate = app.add_subcommand("navigate", "Run a navigation program");
  navigate->add_option("--map", o.map, "Map archive")->required();
  auto* prog = navigate->add_option("--program", o.program, "Program file");
  auto* cmd = navigate->add_option("--command", o.command, "Natural-language command");
  prog->excludes(cmd);
  navigate->add_option("--start", o.start, "Start cell 'row,col'");
  navigate->add_option("--heading", o.heading, "Start heading in degrees");
  navigate->add_option("--translator", o.translator, "Translator endpoint host:port")->needs(cmd);
  navigate->add_option("--csv", o.csv, "Trajectory CSV output");
  navigate->add_option("--overlay", o.overlay, "Trajectory overlay image (PPM)");
  navigate->add_option("--config", o.config, "Run configuration (JSON)");

  auto* evalc = app.add_subcommand("eval", "Evaluate a task suite");
  evalc->add_option("--config", o.config, "Run configuration (JSON)");
  evalc->add_option("--map", o.map, "Evaluate one map archive instead of the suite");
  evalc->add_option("--dataset", o.dataset, "Dataset manifest with the ground-truth scene");
  evalc->add_option("--report", o.report, "Machine-readable report (JSON)");

  auto* fig = app.add_subcommand("export-fig", "Render map images");
  fig->add_option("--map", o.map, "Map archive")->required();
  fig->add_option("--out-dir", o.out_dir, "Output directory")->required();
  fig->add_option("--trajectory", o.trajectory, "Trajectory CSV to overlay");
  fig->add_option("--config", o.config, "Run configuration (JSON)");

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' && !app.get_subcommand_no_throw(args[0])) {
    err << "error: unknown subcommand '" << args[0] << "'\n" << app.help();
    return kExitUsage;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << IVLMAP_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  if (navigate->parsed() && o.program.empty() && o.command.empty()) {
    err << "error: navigate needs --program or --command\n" << navigate->help();
    return kExitUsage;
  }

  try {
    if (synth->parsed()) return cmd_synth(o, out);
    if (build->parsed()) return cmd_build(o, out);
    if (query->parsed()) return cmd_query(o, out);
    if (navigate->parsed()) return cmd_navigate(o, out, err);
    if (evalc->parsed()) return cmd_eval(o, out);
    if (fig->parsed()) return cmd_export_fig(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace ivlmap::cli
