#include "pdacache/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pdacache/analysis.hpp"
#include "pdacache/construction.hpp"
#include "pdacache/pda.hpp"
#include "pdacache/scheme.hpp"

namespace pdacache {

namespace {

using Doc = nlohmann::ordered_json;

enum class Format { kKv, kJson };

std::string kv_value(const Doc& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += ',';
      s += kv_value(e);
    }
    return s;
  }
  return v.dump();
}

void write_kv(const Doc& doc, const std::string& prefix, std::ostream& os) {
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      write_kv(value, prefix + key + ".", os);
    } else {
      os << prefix << key << '=' << kv_value(value) << '\n';
    }
  }
}

void emit(const Doc& doc, Format fmt, std::ostream& os) {
  if (fmt == Format::kJson) {
    os << doc.dump(2) << '\n';
  } else {
    write_kv(doc, "", os);
  }
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw Error("io", "cannot open '" + path + "' for reading");
    ss << f.rdbuf();
  }
  return ss.str();
}

void write_output(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("io", "cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error("io", "failed writing '" + path + "'");
}

Doc gain_profile_doc(const GainProfile& g) {
  Doc arr = Doc::array();
  for (const auto& [gain, slots] : g) {
    arr.push_back(std::to_string(gain) + ":" + std::to_string(slots));
  }
  return arr;
}

Doc record_doc(const SchemeRecord& r) {
  Doc d;
  d["scheme"] = to_string(r.scheme);
  d["H"] = r.params.H;
  d["r"] = r.params.r;
  d["b"] = r.params.b;
  d["lambda"] = r.params.lambda;
  d["K"] = r.K;
  d["memory_ratio"] = to_string(r.memory_ratio);
  d["rate"] = to_string(r.rate);
  d["subpacketization"] = r.subpacketization;
  d["zprime"] = r.zprime;
  return d;
}

Doc error_doc(const std::string& kind, const std::string& message) {
  Doc d;
  d["error"] = kind;
  d["message"] = message;
  return d;
}

Request parse_request(const std::string& text) {
  Request d;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error("usage", "bad request entry '" + item + "'");
    }
    d.push_back(static_cast<std::uint32_t>(v));
  }
  return d;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{"Placement delivery array toolkit for coded caching"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "kv";
  app.add_option("--format", format_name, "Structured output format")
      ->check(CLI::IsMember({"kv", "json"}));

  // construct
  auto* construct_cmd = app.add_subcommand("construct", "Build a PDA");
  std::string family;
  unsigned H = 0, r = 0, b = 0, lambda = 0, K = 0, t = 0;
  std::string out_path;
  construct_cmd->add_option("--family", family, "rule1, rule2 or mn")
      ->required()
      ->check(CLI::IsMember({"rule1", "rule2", "mn"}));
  construct_cmd->add_option("--H", H, "Ground set size");
  construct_cmd->add_option("--r", r, "Column subset size");
  construct_cmd->add_option("--b", b, "Row subset size");
  construct_cmd->add_option("--lambda", lambda, "Intersection size");
  construct_cmd->add_option("--K", K, "Users (mn family)");
  construct_cmd->add_option("--t", t, "Subset size (mn family)");
  construct_cmd->add_option("--out", out_path, "Output file (default stdout)");

  std::string in_path = "-";
  auto* validate_cmd = app.add_subcommand("validate", "Check the PDA conditions");
  validate_cmd->add_option("--in", in_path, "PDA text file, '-' for stdin");

  auto* classify_cmd = app.add_subcommand("classify", "Find useless stars");
  classify_cmd->add_option("--in", in_path, "PDA text file, '-' for stdin");

  auto* reduce_cmd = app.add_subcommand("reduce", "Blank out useless stars");
  reduce_cmd->add_option("--in", in_path, "PDA text file, '-' for stdin");
  reduce_cmd->add_option("--out", out_path, "Output file (default stdout)");

  auto* params_cmd = app.add_subcommand("params", "Closed-form scheme parameters");
  std::string scheme_name;
  params_cmd->add_option("--scheme", scheme_name, "original, new1 or new2")
      ->required()
      ->check(CLI::IsMember({"original", "new1", "new2"}));
  params_cmd->add_option("--H", H)->required();
  params_cmd->add_option("--r", r)->required();
  params_cmd->add_option("--b", b)->required();
  params_cmd->add_option("--lambda", lambda)->required();

  auto* simulate_cmd = app.add_subcommand("simulate", "Run placement and delivery");
  std::string mode_name = "uncoded";
  std::uint32_t N = 0;
  std::size_t file_len = 0;
  std::uint64_t seed = 1;
  std::string request_text;
  std::string files_dir;
  simulate_cmd->add_option("--in", in_path, "PDA text file, '-' for stdin");
  simulate_cmd->add_option("--mode", mode_name)
      ->check(CLI::IsMember({"uncoded", "coded"}));
  simulate_cmd->add_option("--N", N, "Number of files (random library)");
  simulate_cmd->add_option("--file-len", file_len, "Bytes per file (random library)");
  simulate_cmd->add_option("--seed", seed, "Library seed");
  simulate_cmd->add_option("--request", request_text, "Comma separated d_0,...,d_{K-1}");
  simulate_cmd->add_option("--files", files_dir, "Directory of equal-length files");

  auto* sweep_cmd = app.add_subcommand("sweep", "Rate/memory sweep over (b, lambda)");
  std::string csv_path, svg_path, schemes_text;
  sweep_cmd->add_option("--H", H)->required();
  sweep_cmd->add_option("--r", r)->required();
  sweep_cmd->add_option("--csv", csv_path, "CSV output (default stdout)");
  sweep_cmd->add_option("--svg", svg_path, "SVG chart output");
  sweep_cmd->add_option("--schemes", schemes_text, "Comma separated scheme names");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    emit(error_doc("usage", e.what()), Format::kKv, err);
    return 2;
  }
  const Format fmt = format_name == "json" ? Format::kJson : Format::kKv;

  try {
    if (construct_cmd->parsed()) {
      Pda pda;
      if (family == "mn") {
        pda = mn_pda(K, t);
      } else {
        const ConstructionParams p{H, r, b, lambda,
                                   family == "rule1" ? Rule::kI : Rule::kII};
        pda = construct(p);
        if (in_table_gap(p)) {
          Doc w;
          w["warning"] = std::string(kTableGapFlag);
          w["message"] =
              "r + b - lambda >= H: accepted by the construction, outside the "
              "original scheme's stated condition";
          emit(w, Format::kKv, err);
        }
      }
      write_output(out_path, serialize_pda(pda), out);
    } else if (validate_cmd->parsed()) {
      const Pda pda = parse_pda(read_input(in_path, in));
      try {
        const PdaParams p = validate(pda);
        Doc d;
        d["valid"] = true;
        d["K"] = p.K;
        d["F"] = p.F;
        d["Z"] = p.Z;
        d["S"] = p.S;
        d["gain_profile"] = gain_profile_doc(p.gain_profile);
        emit(d, fmt, out);
      } catch (const ValidationError& e) {
        Doc d;
        d["valid"] = false;
        static const char* names[] = {"blank", "C1", "C2", "C3"};
        d["condition"] = names[static_cast<int>(e.condition())];
        d["message"] = e.what();
        if (const auto* c3 = dynamic_cast<const C3Violation*>(&e)) {
          d["first"] = to_string(c3->first());
          d["second"] = to_string(c3->second());
          d["failure"] = to_string(c3->failure());
        }
        emit(d, fmt, out);
        return 1;
      }
    } else if (classify_cmd->parsed()) {
      const Pda pda = parse_pda(read_input(in_path, in));
      validate(restore_blanks(pda));
      const StarClassification c = classify_stars(pda);
      Doc d;
      d["useful_count"] = c.useful.size();
      d["useless_count"] = c.useless.size();
      d["per_column_useless"] = c.per_column_useless;
      Doc pos = Doc::array();
      for (const Position& p : c.useless) pos.push_back(to_string(p));
      d["useless"] = pos;
      emit(d, fmt, out);
    } else if (reduce_cmd->parsed()) {
      const Pda pda = parse_pda(read_input(in_path, in));
      validate(pda);
      const Reduction red = reduce(pda);
      const std::string text =
          "# zprime=" + std::to_string(red.zprime) + "\n" + serialize_pda(red.reduced);
      write_output(out_path, text, out);
      if (!out_path.empty() && out_path != "-") {
        Doc d;
        d["zprime"] = red.zprime;
        emit(d, fmt, out);
      }
    } else if (params_cmd->parsed()) {
      const DesignPoint p{H, r, b, lambda};
      const SchemeRecord rec = scheme_name == "original" ? original_params(p)
                               : scheme_name == "new1"   ? new_params_I(p)
                                                         : new_params_II(p);
      emit(record_doc(rec), fmt, out);
    } else if (simulate_cmd->parsed()) {
      const Pda pda = parse_pda(read_input(in_path, in));
      Library lib;
      if (!files_dir.empty()) {
        lib = Library::from_directory(files_dir);
      } else {
        if (N == 0 || file_len == 0) {
          throw Error("usage", "simulate needs --N and --file-len, or --files");
        }
        lib = Library::random(N, file_len, seed);
      }
      const auto users = static_cast<std::uint32_t>(pda.cols());
      const Request d = request_text.empty() ? identity_request(users, lib.N())
                                             : parse_request(request_text);
      const PlacementMode mode =
          mode_name == "coded" ? PlacementMode::kCoded : PlacementMode::kUncoded;
      const RunReport rep = run_and_verify(pda, lib, d, mode);
      Doc doc;
      doc["ok"] = rep.ok;
      doc["mode"] = to_string(rep.mode);
      doc["K"] = rep.K;
      doc["N"] = rep.N;
      doc["S"] = rep.S;
      doc["subpacketization"] = rep.subpacketization;
      doc["zprime"] = rep.zprime;
      doc["memory_ratio"] = to_string(rep.memory_ratio);
      doc["rate"] = to_string(rep.rate);
      doc["bytes_sent"] = rep.bytes_sent;
      doc["file_len"] = lib.file_len;
      doc["packet_len"] = rep.packet_len;
      doc["padded_file_len"] = rep.padded_file_len;
      doc["cached_bytes_per_user"] = rep.cached_bytes_per_user;
      doc["distinct_request"] = rep.distinct_request;
      Doc failed = Doc::array();
      for (std::size_t k = 0; k < rep.user_ok.size(); ++k) {
        if (!rep.user_ok[k]) failed.push_back(k);
      }
      doc["failed_users"] = failed;
      emit(doc, fmt, out);
      return rep.ok ? 0 : 3;
    } else if (sweep_cmd->parsed()) {
      std::set<SchemeKind> kinds = all_scheme_kinds();
      if (!schemes_text.empty()) {
        kinds.clear();
        std::stringstream ss(schemes_text);
        std::string name;
        while (std::getline(ss, name, ',')) kinds.insert(scheme_kind_from_string(name));
      }
      const auto records = sweep(H, r, kinds);
      write_output(csv_path, to_csv(records), out);
      if (!svg_path.empty()) write_output(svg_path, to_svg(records), out);
    }
  } catch (const Error& e) {
    emit(error_doc(e.kind(), e.what()), fmt, err);
    return e.kind() == "usage" ? 2 : 1;
  } catch (const std::exception& e) {
    emit(error_doc("internal", e.what()), fmt, err);
    return 1;
  }
  return 0;
}

}  // namespace pdacache
