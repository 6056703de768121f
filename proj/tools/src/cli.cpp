#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <atomic>
#include <future>
#include <limits>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhb/cfrac.hpp"
#include "qhb/lattice.hpp"
#include "qhb/lens_oracle.hpp"

namespace qhb::cli {
namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------- parsing

class InputParser {
 public:
  explicit InputParser(std::string_view text) : text_(text) {}

  ParsedInput parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty input");
    ParsedInput out;
    if (text_.find(';') != std::string_view::npos) {
      out = seifert();
    } else if (text_[pos_] == '[') {
      out = string();
    } else {
      const std::size_t start = pos_;
      Integer p = integer();
      expect('/');
      Integer q = integer();
      end();
      if (p < 1) {
        pos_ = start;
        fail("lens space needs p >= 1");
      }
      out = LensSpace(p, q);
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError("cannot parse '" + std::string(text_) + "': " + what, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void end() {
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
  }

  Integer integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    std::string token(text_.substr(start, pos_ - start));
    if (token.front() == '+') token.erase(0, 1);
    return Integer(token);
  }

  SeifertInvariants seifert() {
    SeifertInvariants inv;
    inv.b = integer();
    expect(';');
    skip_space();
    if (pos_ == text_.size()) return inv;
    for (;;) {
      SeifertLeg leg;
      const std::size_t start = pos_;
      leg.alpha = integer();
      expect('/');
      leg.beta = integer();
      if (leg.alpha < 2) {
        pos_ = start;
        fail("fibre multiplicity must be >= 2");
      }
      inv.legs.push_back(std::move(leg));
      if (peek(',')) {
        ++pos_;
        continue;
      }
      end();
      return inv;
    }
  }

  WeightString string() {
    expect('[');
    std::vector<WeightString::value_type> entries;
    if (peek(']')) {
      ++pos_;
      end();
      return WeightString(std::move(entries));
    }
    for (;;) {
      const std::size_t start = pos_;
      const Integer v = integer();
      if (v > std::numeric_limits<WeightString::value_type>::max() ||
          v < std::numeric_limits<WeightString::value_type>::min()) {
        pos_ = start;
        fail("weight out of range");
      }
      entries.push_back(static_cast<WeightString::value_type>(v));
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect(']');
      end();
      return WeightString(std::move(entries));
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ------------------------------------------------------------------- JSON

ordered_json number(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

ordered_json to_json(const WeightString& s) { return s.entries(); }

ordered_json to_json(const SeifertInvariants& inv) {
  ordered_json legs = ordered_json::array();
  for (const auto& leg : inv.legs) legs.push_back({number(leg.alpha), number(leg.beta)});
  return {{"text", inv.to_string()}, {"b", number(inv.b)}, {"legs", legs}};
}

ordered_json to_json(const StarGraph& g) {
  ordered_json legs = ordered_json::array();
  for (const auto& leg : g.legs) legs.push_back(to_json(leg));
  return {{"a0", g.a0}, {"legs", legs}};
}

ordered_json to_json(const LensSpace& l) { return {{"p", number(l.p())}, {"q", number(l.q())}}; }

ordered_json to_json(const LatticeWitness& w) {
  return {{"ambient_rank", w.ambient_rank}, {"vectors", w.vectors}};
}

ordered_json to_json(const FamilyInstance& f) {
  ordered_json params = ordered_json::object();
  for (const auto& [name, value] : f.parameters) params[name] = number(value);
  return {{"name", f.family}, {"parameters", params}, {"p", number(f.p)}, {"q", number(f.q)}};
}

ordered_json to_json(const LegPair& pair) { return {pair.first, pair.second}; }

ordered_json to_json(const Reduction& red) {
  ordered_json j;
  j["complementary_pair"] = to_json(red.complementary_pair);
  j["leg_order"] = red.leg_order;
  j["leg1"] = to_json(red.leg1);
  j["a0"] = red.a0;
  j["r"] = red.r;
  j["chain"] = to_json(red.chain);
  j["lens_string"] = red.lens_string ? to_json(*red.lens_string) : ordered_json();
  j["lens"] = red.lens ? to_json(*red.lens) : ordered_json();
  j["s3"] = red.is_s3();
  return j;
}

ordered_json to_json(const MontesinosReport& m) {
  return {{"notation", m.notation},
          {"determinant", number(m.determinant)},
          {"is_knot", m.is_knot},
          {"reduced_two_bridge", m.reduced_two_bridge},
          {"reduced_link", m.reduced_link},
          {"ribbon_claim", m.ribbon_claim}};
}

template <class T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : ordered_json();
}

ordered_json header(std::string_view command, std::string_view input) {
  ordered_json j;
  j["schema_version"] = schema_version;
  j["command"] = command;
  j["input"] = input;
  return j;
}

ordered_json certificate_json(const Certificate& c, std::string_view input) {
  ordered_json j = header("decide", input);
  j["families_version"] = c.families_version;
  j["verdict"] = verdict_name(c.verdict);
  j["route"] = c.route == Route::StarGraph ? "star_graph" : "lens_space";
  j["normalized"] = to_json(c.normalized);
  j["orientation_flipped"] = c.orientation_flipped;
  j["graph"] = optional_json(c.graph);
  ordered_json pairs = ordered_json::array();
  for (const auto& p : c.complementary_pairs) pairs.push_back(to_json(p));
  j["complementary_pairs"] = pairs;
  j["reduction"] = optional_json(c.reduction);
  j["lens"] = optional_json(c.lens);
  j["evidence"] = evidence_name(c.evidence);
  j["family"] = optional_json(c.family);
  j["witness_status"] = witness_status_name(c.witness_status);
  j["witness"] = optional_json(c.witness);
  j["montesinos"] = optional_json(c.montesinos);
  return j;
}

// ------------------------------------------------------------------- text

std::string witness_text(const LatticeWitness& w) {
  std::string out;
  for (const auto& v : w.vectors) {
    out += "  [";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(v[i]);
    }
    out += "]\n";
  }
  return out;
}

std::string pair_text(const LegPair& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

std::string reduction_text(const Reduction& red) {
  std::ostringstream os;
  os << "complementary pair: " << pair_text(red.complementary_pair) << "\n";
  os << "leg order: " << red.leg_order[0] << "," << red.leg_order[1] << "," << red.leg_order[2] << "\n";
  os << "leg1: " << red.leg1.to_string() << "\n";
  os << "a0: " << red.a0 << "\n";
  os << "r: " << red.r << "\n";
  os << "chain: " << red.chain.to_string() << "\n";
  if (red.lens_string) os << "lens string: " << red.lens_string->to_string() << "\n";
  if (red.lens) os << "lens: " << (red.is_s3() ? "S3" : red.lens->to_string()) << "\n";
  return os.str();
}

std::string montesinos_text(const MontesinosReport& m) {
  std::ostringstream os;
  os << "montesinos: " << m.notation << "\n";
  os << "determinant: " << m.determinant << "\n";
  os << "knot: " << (m.is_knot ? "yes" : "no") << "\n";
  if (!m.reduced_link.empty()) os << "ribbon move: " << m.reduced_link << "\n";
  os << "ribbon surface with euler characteristic 1: " << (m.ribbon_claim ? "yes" : "no") << "\n";
  return os.str();
}

std::string certificate_text(const Certificate& c) {
  std::ostringstream os;
  os << "verdict: " << verdict_name(c.verdict) << "\n";
  os << "route: " << (c.route == Route::StarGraph ? "star graph" : "lens space") << "\n";
  os << "normalized: " << c.normalized.to_string() << "\n";
  if (c.graph) {
    os << "graph: " << c.graph->to_string() << (c.orientation_flipped ? " (orientation reversed)" : "") << "\n";
  }
  if (c.reduction) os << reduction_text(*c.reduction);
  if (c.route == Route::LensSpace && c.lens) os << "lens: " << c.lens->to_string() << "\n";
  os << "evidence: " << evidence_name(c.evidence) << "\n";
  if (c.family) os << "family: " << c.family->to_string() << "\n";
  os << "witness: " << witness_status_name(c.witness_status) << "\n";
  if (c.witness) os << witness_text(*c.witness);
  os << "families version: " << c.families_version << "\n";
  return os.str();
}

// --------------------------------------------------------------- commands

struct CommandOutput {
  int exit_code = 0;
  std::string text;
  ordered_json json;
};

SeifertInvariants expect_seifert(const ParsedInput& in, std::string_view command) {
  if (const auto* s = std::get_if<SeifertInvariants>(&in)) return *s;
  throw SyntaxError(std::string(command) + " expects Seifert invariants 'b;a1/b1,...'", 0);
}

class Session {
 public:
  explicit Session(const RunConfig& config) : config_(config) {}

  const FamilyData& data() {
    std::call_once(loaded_, [&] { data_ = FamilyData::load(FamilyData::default_path(config_.families)); });
    return *data_;
  }

  CommandOutput decide(std::string_view input, unsigned search_threads) {
    DecideOptions opts;
    opts.limits = config_.limits();
    opts.limits.threads = search_threads;
    const Certificate c = qhb::decide(expect_seifert(parse_input(input), "decide"), data(), opts);
    return {c.verdict == Verdict::Yes ? exit_code::yes : exit_code::no, certificate_text(c),
            certificate_json(c, input)};
  }

  CommandOutput report(std::string_view input, unsigned search_threads) {
    DecideOptions opts;
    opts.limits = config_.limits();
    opts.limits.threads = search_threads;
    opts.attach_witness = false;
    const Certificate c = qhb::decide(expect_seifert(parse_input(input), "report"), data(), opts);
    if (!c.montesinos) throw OutOfScope("report needs three exceptional fibres");
    ordered_json j = header("report", input);
    j["families_version"] = c.families_version;
    j["verdict"] = verdict_name(c.verdict);
    j["montesinos"] = to_json(*c.montesinos);
    return {exit_code::yes, "verdict: " + std::string(verdict_name(c.verdict)) + "\n" + montesinos_text(*c.montesinos),
            j};
  }

  CommandOutput reduce(std::string_view input) {
    const SeifertInvariants inv = expect_seifert(parse_input(input), "reduce");
    const Reduction red = qhb::reduce(inv);
    const OrientedStar star = to_star_graph(inv);
    ordered_json j = header("reduce", input);
    j["normalized"] = to_json(normalize(inv));
    j["graph"] = to_json(star.graph);
    j["orientation_flipped"] = star.orientation_flipped;
    j["reduction"] = to_json(red);
    return {exit_code::yes, "graph: " + star.graph.to_string() + "\n" + reduction_text(red), j};
  }

  CommandOutput embed(std::string_view input, unsigned search_threads) {
    const ParsedInput in = parse_input(input);
    GramMatrix m(0);
    if (const auto* s = std::get_if<WeightString>(&in)) {
      m = gram(*s);
    } else if (const auto* l = std::get_if<LensSpace>(&in)) {
      m = gram(l->string());
    } else {
      const OrientedStar star = to_star_graph(std::get<SeifertInvariants>(in));
      m = gram(star.graph);
    }
    SearchLimits limits = config_.limits();
    limits.threads = search_threads;
    const auto w = find_embedding(m, limits);
    ordered_json j = header("embed", input);
    j["rank"] = m.rank();
    j["embeds"] = w.has_value();
    j["witness"] = optional_json(w);
    return {w ? exit_code::yes : exit_code::no, w ? witness_text(*w) : std::string("none\n"), j};
  }

  CommandOutput lens(std::string_view input, unsigned search_threads) {
    const ParsedInput in = parse_input(input);
    std::optional<LensSpace> l;
    if (const auto* s = std::get_if<LensSpace>(&in)) {
      l = *s;
    } else if (const auto* w = std::get_if<WeightString>(&in)) {
      const Fraction f = eval(*w);
      l = LensSpace(f.p(), f.q());
    } else {
      throw SyntaxError("lens expects 'p/q' or '[a1,...,an]'", 0);
    }
    const LensVerdict v = bounds_qhb(*l, data());
    const SquareFilter sq = square_filter(*l);
    std::string necessity = "not_applicable";
    if (!l->is_s3()) {
      SearchLimits limits = config_.limits();
      limits.threads = search_threads;
      try {
        necessity = embedding_necessity(*l, limits).verdict == Necessity::No ? "no" : "inconclusive";
      } catch (const ResourceExceeded&) {
        necessity = "resource_exceeded";
      }
    }
    ordered_json j = header("lens", input);
    j["families_version"] = data().version();
    j["lens"] = to_json(*l);
    j["verdict"] = v.bounds ? "Yes" : "No";
    j["square_filter"] = sq == SquareFilter::Passes ? "passes" : "fails_necessary";
    j["embedding_necessity"] = necessity;
    j["family"] = optional_json(v.family);
    std::ostringstream os;
    os << "lens: " << l->to_string() << "\n";
    os << "verdict: " << (v.bounds ? "Yes" : "No") << "\n";
    os << "square filter: " << (sq == SquareFilter::Passes ? "passes" : "fails") << "\n";
    os << "embedding necessity: " << necessity << "\n";
    if (v.bounds) os << "family: " << (v.family ? v.family->to_string() : v.family_name()) << "\n";
    os << "families version: " << data().version() << "\n";
    return {v.bounds ? exit_code::yes : exit_code::no, os.str(), j};
  }

  CommandOutput generate(const GenerateOptions& opts) {
    const auto members = generate_list(data(), opts);
    ordered_json j = header("generate", "");
    j["families_version"] = data().version();
    j["max_vertices"] = opts.max_vertices;
    ordered_json list = ordered_json::array();
    std::ostringstream os;
    for (const auto& m : members) {
      const std::string seifert = to_seifert(m.graph).to_string();
      list.push_back({{"graph", to_json(m.graph)},
                      {"seifert", seifert},
                      {"t", to_json(m.t)},
                      {"r", m.r},
                      {"alpha", number(m.alpha)},
                      {"beta", number(m.beta)},
                      {"family", to_json(m.family)}});
      os << seifert << "  " << m.graph.to_string() << "  t=" << m.t.to_string() << " r=" << m.r << " "
         << m.alpha << "/" << m.beta << " " << m.family.to_string() << "\n";
    }
    j["count"] = members.size();
    j["members"] = list;
    return {exit_code::yes, os.str(), j};
  }

 private:
  const RunConfig& config_;
  std::once_flag loaded_;
  std::optional<FamilyData> data_;
};

std::string error_line(const std::string& kind, const std::string& message) {
  std::string flat = message;
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  return "error: " + kind + ": " + flat + "\n";
}

struct Item {
  int exit_code = 0;
  std::string out;
  std::string kind;  // set on error
  std::string message;

  std::string err(const std::string& where = {}) const {
    return kind.empty() ? std::string() : error_line(kind, where + message);
  }
};

template <class F>
Item guarded(F&& body, const RunConfig& config) {
  Item item;
  try {
    CommandOutput r = body();
    item.exit_code = r.exit_code;
    item.out = config.format == Format::Json ? r.json.dump(2) + "\n" : r.text;
  } catch (const Error& e) {
    item.exit_code = exit_code_for(e.kind());
    item.kind = error_kind_name(e.kind());
    item.message = e.what();
  } catch (const std::exception& e) {
    item.exit_code = exit_code::internal;
    item.kind = "InternalError";
    item.message = e.what();
  }
  return item;
}

std::vector<std::string> batch_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(first, last - first + 1));
  }
  return lines;
}

}  // namespace

ParsedInput parse_input(std::string_view text) { return InputParser(text).parse(); }

SearchLimits RunConfig::limits() const {
  SearchLimits l;
  l.max_nodes = max_nodes;
  l.coordinate_bound = coordinate_bound;
  l.threads = threads;
  return l;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfScope: return exit_code::out_of_scope;
    case ErrorKind::Syntax: return exit_code::usage;
    case ErrorKind::Domain:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::NotComplementary:
    case ErrorKind::NotInR: return exit_code::domain;
    case ErrorKind::NotRationalHomologySphere:
    case ErrorKind::DegenerateInput: return exit_code::not_qhs;
    case ErrorKind::ResourceExceeded: return exit_code::resource;
    case ErrorKind::DataAssetMissing: return exit_code::data_asset;
  }
  return exit_code::internal;
}

RunResult run(const std::vector<std::string>& args, std::string_view stdin_text) {
  RunConfig config;
  bool json = false;
  std::string families;
  std::int64_t coordinate_bound = 0;
  GenerateOptions gen;
  std::int64_t max_param = 4;
  std::int64_t max_alpha = 5;
  std::string input;

  CLI::App app{"Rational homology balls bounded by Seifert spaces with complementary legs", "qhb"};
  app.require_subcommand(1);
  app.add_flag("--json", json, "Emit JSON documents");
  app.add_option("--max-nodes", config.max_nodes, "Search node limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--coordinate-bound", coordinate_bound, "Cap on |coordinate| in embedding searches")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", config.threads, "Worker threads (search and batch)")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("--families", families, "Family data file (default: $QHB_FAMILIES or the installed asset)");

  const char* input_help = "Input text, or '-' to read one input per line from stdin";
  auto* decide = app.add_subcommand("decide", "Decide whether Y bounds a rational homology ball");
  auto* reduce = app.add_subcommand("reduce", "Show the complementary-leg reduction");
  auto* embed = app.add_subcommand("embed", "Search a lattice embedding into the diagonal lattice");
  auto* lens = app.add_subcommand("lens", "Decide a lens space L(p,q)");
  auto* report = app.add_subcommand("report", "Montesinos link report");
  auto* generate = app.add_subcommand("generate", "Enumerate graphs of the bounding list");
  for (auto* sub : {decide, reduce, embed, lens, report}) {
    sub->fallthrough();
    sub->add_option("input", input, input_help)->required();
  }
  generate->fallthrough();
  generate->add_option("--max-vertices", gen.max_vertices, "Largest graph emitted")->capture_default_str();
  generate->add_option("--max-param", max_param, "Largest family parameter")->capture_default_str();
  generate->add_option("--max-r", gen.max_r, "Largest number of appended 2's")->capture_default_str();
  generate->add_option("--max-alpha", max_alpha, "Largest complementary multiplicity")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {0, app.help(), {}};
  } catch (const CLI::CallForAllHelp&) {
    return {0, app.help("", CLI::AppFormatMode::All), {}};
  } catch (const CLI::ParseError& e) {
    return {exit_code::usage, {}, error_line("UsageError", e.what())};
  }
  config.format = json ? Format::Json : Format::Text;
  config.families = families;
  if (coordinate_bound > 0) config.coordinate_bound = coordinate_bound;
  gen.max_param = max_param;
  gen.max_alpha = max_alpha;

  Session session(config);
  auto dispatch = [&](std::string_view text, unsigned search_threads) -> CommandOutput {
    if (decide->parsed()) return session.decide(text, search_threads);
    if (reduce->parsed()) return session.reduce(text);
    if (embed->parsed()) return session.embed(text, search_threads);
    if (lens->parsed()) return session.lens(text, search_threads);
    return session.report(text, search_threads);
  };

  if (generate->parsed()) {
    Item item = guarded([&] { return session.generate(gen); }, config);
    return {item.exit_code, item.out, item.err()};
  }
  if (input != "-") {
    Item item = guarded([&] { return dispatch(input, config.threads); }, config);
    return {item.exit_code, item.out, item.err()};
  }

  // Batch: inputs are decided concurrently, one worker per thread, and
  // reported in input order. Each search runs single-threaded.
  const auto lines = batch_lines(stdin_text);
  std::vector<Item> items(lines.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < lines.size(); i = next++) {
      items[i] = guarded([&] { return dispatch(lines[i], 1); }, config);
    }
  };
  std::vector<std::future<void>> pool;
  for (unsigned t = 1; t < config.threads; ++t) pool.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : pool) f.get();

  RunResult result;
  for (std::size_t i = 0; i < items.size(); ++i) {
    result.exit_code = std::max(result.exit_code, items[i].exit_code);
    if (config.format == Format::Json) {
      // One compact document per line.
      if (!items[i].out.empty()) result.out += ordered_json::parse(items[i].out).dump() + "\n";
    } else {
      result.out += "# " + lines[i] + "\n" + items[i].out;
    }
    result.err += items[i].err("input " + std::to_string(i + 1) + " (" + lines[i] + "): ");
  }
  return result;
}

}  // namespace qhb::cli
