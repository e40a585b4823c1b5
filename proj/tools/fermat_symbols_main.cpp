// Command-line interface: exact modular-symbol computations for the
// Fermat groups Phi(n), with deterministic JSON or CSV output.

#include "fermat/homology.hpp"
#include "fermat/int_matrix.hpp"
#include "fermat/manin.hpp"
#include "fermat/psl2.hpp"
#include "fermat/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using fermat::Int;
using fermat::IntMatrix;
using ordered_json = nlohmann::ordered_json;

std::vector<std::string> ms_labels(const fermat::manin::SymbolSpace& space) {
  std::vector<std::string> out;
  out.reserve(space.rank());
  for (const auto& b : space.basis()) out.push_back(fermat::manin::to_string(b));
  return out;
}

std::vector<std::string> s_labels(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n - 2; ++i)
    for (int j = 0; j <= n - 2; ++j)
      out.push_back("s[" + std::to_string(i) + "," + std::to_string(j) + "]");
  return out;
}

std::vector<std::string> cusp_labels(int n) {
  std::vector<std::string> out;
  for (const auto& c : fermat::manin::cusp_set(n))
    out.push_back(fermat::manin::to_string(c));
  return out;
}

std::vector<std::vector<std::string>> matrix_payload(const IntMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out[i].reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      out[i].push_back(m(i, j).str());
  }
  return out;
}

std::vector<std::vector<std::string>> row_payload(const std::vector<Int>& v) {
  std::vector<std::string> row;
  row.reserve(v.size());
  for (const auto& x : v) row.push_back(x.str());
  return {row};
}

struct Document {
  int n;
  std::string subject;
  std::string convention;
  std::optional<std::string> note;
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> payload;
};

void emit(const Document& doc, const std::string& format) {
  if (format == "json") {
    ordered_json j;
    j["n"] = doc.n;
    j["subject"] = doc.subject;
    j["convention"] = doc.convention;
    if (doc.note) j["note"] = *doc.note;
    j["labels"] = doc.labels;
    j["payload"] = doc.payload;
    std::cout << j.dump(2) << "\n";
  } else {
    std::string head;
    for (std::size_t i = 0; i < doc.labels.size(); ++i) {
      if (i) head += ",";
      head += doc.labels[i];
    }
    std::cout << head << "\n";
    for (const auto& row : doc.payload) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += ",";
        line += row[i];
      }
      std::cout << line << "\n";
    }
  }
}

fermat::manin::CosetLabel parse_symbol(const std::string& text, int n) {
  int i, j, k;
  char extra;
  if (std::sscanf(text.c_str(), "%d ,%d ,%d %c", &i, &j, &k, &extra) != 3)
    throw CLI::ValidationError("--symbol", "expected \"i,j,k\"");
  if (k < 0 || k > 5)
    throw CLI::ValidationError("--symbol", "k must be in 0..5");
  auto mod = [n](int x) { return ((x % n) + n) % n; };
  return {mod(i), mod(j), k};
}

int run_verify(int n_max, bool corrupt, const std::string& format) {
  fermat::verify::Options opts;
  opts.n_max = n_max;
  opts.corrupt_relation_entry = corrupt;
  auto results = fermat::verify::run(opts);
  if (format == "json") {
    ordered_json j;
    j["n"] = n_max;
    j["subject"] = "verify";
    ordered_json checks = ordered_json::array();
    for (const auto& r : results) {
      ordered_json c;
      c["name"] = r.name;
      c["n"] = r.n;
      c["pass"] = r.pass;
      if (!r.pass) c["detail"] = r.detail;
      checks.push_back(c);
    }
    j["checks"] = checks;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " (n=" << r.n
                << ")";
      if (!r.pass) std::cout << ": " << r.detail;
      std::cout << "\n";
    }
  }
  return fermat::verify::all_passed(results) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular symbols, homology bases and automorphism actions "
               "for the Fermat curves x^n + y^n = z^n"};
  app.require_subcommand(1);

  int n = 1;
  std::string format = "json";
  std::string space_arg = "ms";
  std::string symbol_arg;
  std::string gen_arg;
  int n_max = 5;
  bool corrupt = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "level (n >= 1)")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* basis = app.add_subcommand("basis", "list a basis");
  add_common(basis);
  basis->add_option("--space", space_arg, "ms (Manin symbols) or h1 (homology)")
      ->check(CLI::IsMember({"ms", "h1"}));

  CLI::App* reduce = app.add_subcommand("reduce", "reduce a coset symbol");
  add_common(reduce);
  reduce->add_option("--symbol", symbol_arg, "coset label \"i,j,k\"")->required();

  CLI::App* boundary = app.add_subcommand("boundary", "boundary of a coset symbol");
  add_common(boundary);
  boundary->add_option("--symbol", symbol_arg, "coset label \"i,j,k\"")->required();

  CLI::App* action = app.add_subcommand("action", "automorphism action matrix");
  add_common(action);
  action->add_option("--gen", gen_arg, "e0, e1, e0e1 or phi")
      ->required()
      ->check(CLI::IsMember({"e0", "e1", "e0e1", "phi"}));

  CLI::App* monodromy = app.add_subcommand("monodromy", "fibration monodromy matrix");
  add_common(monodromy);

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--n-max", n_max, "check levels 1..N")
      ->required()
      ->check(CLI::PositiveNumber);
  verify->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  verify->add_flag("--inject-corruption", corrupt,
                   "corrupt one relation entry first (failure-path self test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (verify->parsed()) {
      std::string vfmt = verify->count("--format") ? format : "text";
      return run_verify(n_max, corrupt, vfmt);
    }

    Document doc;
    doc.n = n;
    doc.convention = "row-vectors";

    if (basis->parsed()) {
      fermat::manin::SymbolSpace space(n);
      if (space_arg == "ms") {
        doc.subject = "basis";
        doc.labels = ms_labels(space);
      } else {
        auto data = fermat::homology::homology(space);
        doc.subject = "homology";
        doc.labels = s_labels(n);
        doc.payload = matrix_payload(data.s_basis);
      }
    } else if (reduce->parsed()) {
      fermat::manin::SymbolSpace space(n);
      doc.subject = "reduce";
      doc.labels = ms_labels(space);
      doc.payload = row_payload(space.reduce(parse_symbol(symbol_arg, n)).v);
    } else if (boundary->parsed()) {
      doc.subject = "boundary";
      doc.labels = cusp_labels(n);
      fermat::manin::SymbolVector sv;
      sv.n = n;
      sv.add(parse_symbol(symbol_arg, n), 1);
      auto div = fermat::manin::boundary(sv);
      std::vector<Int> coords(3 * static_cast<std::size_t>(n));
      for (const auto& [cls, coeff] : div.coeffs)
        coords[fermat::manin::cusp_class_index(cls, n)] = coeff;
      doc.payload = row_payload(coords);
    } else if (action->parsed() || monodromy->parsed()) {
      fermat::manin::SymbolSpace space(n);
      doc.subject = monodromy->parsed() ? "monodromy" : "action";
      doc.convention = "columns-are-images";
      if (action->parsed() && gen_arg == "phi") {
        doc.note = "phi acts on the full symbol space; it does not act "
                   "through the group ring on the s-basis";
        doc.labels = ms_labels(space);
        doc.payload = matrix_payload(
            fermat::homology::action_on_symbols(space, fermat::homology::Gen::Phi));
      } else {
        fermat::homology::Gen gen = fermat::homology::Gen::E0E1;
        if (action->parsed() && gen_arg == "e0") gen = fermat::homology::Gen::E0;
        if (action->parsed() && gen_arg == "e1") gen = fermat::homology::Gen::E1;
        auto data = fermat::homology::homology(space);
        doc.labels = s_labels(n);
        doc.payload = matrix_payload(
            fermat::homology::action_on_homology(space, data, gen));
      }
    }

    emit(doc, format);
    return 0;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  }
}
