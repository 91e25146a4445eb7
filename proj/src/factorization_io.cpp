#include <filesystem>
#include <fstream>
#include <sstream>

#include "tropfact/factorization.hpp"

namespace tropfact {

namespace {

std::size_t parse_index(const std::string& token, std::size_t n) {
  std::size_t used = 0, value = 0;
  try {
    value = std::stoul(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || value == 0 || value > n)
    throw Error(ErrorCode::ParseError, "bad row index '" + token + "'");
  return value - 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string to_string(const ElementaryMatrix& e) {
  return std::visit(
      [](const auto& op) -> std::string {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Swap>)
          return "swap " + std::to_string(op.i + 1) + " " + std::to_string(op.j + 1);
        else if constexpr (std::is_same_v<T, Scale>)
          return "scale " + std::to_string(op.row + 1) + " " + to_string(op.k);
        else
          return "addmul " + std::to_string(op.target + 1) + " " + std::to_string(op.source + 1) +
                 " " + to_string(op.k);
      },
      e.op());
}

std::string to_string(Equality mode) {
  switch (mode) {
    case Equality::ExactSupertropical: return "exact";
    case Equality::NuEquivalent: return "nu";
    case Equality::ExactTropical: return "trop";
  }
  return "?";
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::Equal: return "=";
    case Relation::Greater: return ">";
  }
  return "?";
}

std::string to_string(RecoveryCheck c) {
  switch (c) {
    case RecoveryCheck::Fails: return "fails";
    case RecoveryCheck::TropicalOnly: return "tropical-only";
    case RecoveryCheck::Supertropical: return "supertropical";
  }
  return "?";
}

std::string to_string(const NonFactorizabilityWitness& w) {
  std::ostringstream os;
  if (w.kind == NonFactorizabilityWitness::Kind::AllLessTrack) {
    os << "all-less-track: 1";
    for (std::size_t i = w.track[0];; i = w.track[i]) {
      os << "->" << i + 1;
      if (i == 0) break;
    }
    return os.str();
  }
  os << "shift-pair: sigma=";
  for (std::size_t i = 0; i < w.sigma.size(); ++i) os << (i ? " " : "") << w.sigma[i] + 1;
  os << " pi=";
  for (std::size_t i = 0; i < w.pi.size(); ++i) os << (i ? " " : "") << w.pi[i] + 1;
  os << " t=" << w.shift;
  return os.str();
}

std::string to_string(const Factorization& f) {
  std::ostringstream os;
  os << "n " << f.n << '\n';
  for (const auto& e : f.factors) os << to_string(e) << '\n';
  os << "target inline\n" << to_string(f.target);
  os << "mode " << to_string(f.mode) << '\n';
  return os.str();
}

Factorization parse_factorization(std::string_view text, const std::string& base_dir) {
  std::istringstream in{std::string(text)};
  std::string line;
  Factorization f;
  bool have_n = false, have_target = false, have_mode = false;

  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      if (const auto hash = out.find('#'); hash != std::string::npos) out.erase(hash);
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  while (next_line(line)) {
    std::istringstream words(line);
    std::string head;
    words >> head;
    std::vector<std::string> args;
    for (std::string w; words >> w;) args.push_back(w);

    if (head == "n") {
      if (have_n || args.size() != 1) throw Error(ErrorCode::ParseError, "bad header: " + line);
      f.n = parse_index(args[0], std::size_t{1} << 20) + 1;
      have_n = true;
      continue;
    }
    if (!have_n) throw Error(ErrorCode::ParseError, "missing 'n <dim>' header");

    if (head == "swap" && args.size() == 2) {
      f.factors.push_back(
          ElementaryMatrix::swap(f.n, parse_index(args[0], f.n), parse_index(args[1], f.n)));
    } else if (head == "scale" && args.size() == 2) {
      f.factors.push_back(
          ElementaryMatrix::scale(f.n, parse_index(args[0], f.n), parse_scalar(args[1])));
    } else if (head == "addmul" && args.size() == 3) {
      f.factors.push_back(ElementaryMatrix::add_multiple(
          f.n, parse_index(args[0], f.n), parse_index(args[1], f.n), parse_scalar(args[2])));
    } else if (head == "target" && args.size() == 1 && !have_target) {
      if (args[0] == "inline") {
        std::string body, row;
        if (!next_line(row)) throw Error(ErrorCode::ParseError, "missing inline target");
        body = row + '\n';
        std::istringstream dim_in(row);
        std::size_t rows = 0;
        if (!(dim_in >> rows)) throw Error(ErrorCode::ParseError, "bad target dimension: " + row);
        for (std::size_t r = 0; r < rows; ++r) {
          if (!next_line(row)) throw Error(ErrorCode::ParseError, "truncated inline target");
          body += row + '\n';
        }
        f.target = parse_matrix(body);
      } else {
        std::filesystem::path p(args[0]);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        f.target = parse_matrix(read_file(p.string()));
      }
      have_target = true;
    } else if (head == "mode" && args.size() == 1 && !have_mode) {
      if (args[0] == "exact")
        f.mode = Equality::ExactSupertropical;
      else if (args[0] == "nu")
        f.mode = Equality::NuEquivalent;
      else if (args[0] == "trop")
        f.mode = Equality::ExactTropical;
      else
        throw Error(ErrorCode::ParseError, "unknown mode '" + args[0] + "'");
      have_mode = true;
    } else {
      throw Error(ErrorCode::ParseError, "unrecognised line: " + line);
    }
  }
  if (!have_n || !have_target) throw Error(ErrorCode::ParseError, "factorization needs n and target");
  if (f.target.size() != f.n) throw Error(ErrorCode::DimensionMismatch, "target dimension differs");
  return f;
}

Factorization read_factorization_file(const std::string& path) {
  const std::filesystem::path p(path);
  return parse_factorization(read_file(path), p.has_parent_path() ? p.parent_path().string() : ".");
}

}  // namespace tropfact
