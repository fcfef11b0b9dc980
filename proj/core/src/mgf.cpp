#include "homs/mgf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "homs/errors.hpp"

namespace homs {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

// Accepts "2", "2+" and "+2"; anything else is a grammar violation.
bool parse_charge(std::string_view token, std::uint8_t& out) {
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  else if (token.back() == '+') token.remove_suffix(1);
  unsigned value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value < 1 || value > 99) return false;
  out = static_cast<std::uint8_t>(value);
  return true;
}

std::string_view first_token(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(0, i);
}

struct BlockState {
  std::size_t begin_line = 0;
  std::size_t ordinal = 0;
  std::string title;
  std::string peptide;
  double pepmass = 0.0;
  bool has_pepmass = false;
  std::uint8_t charge = kUnknownCharge;
  std::vector<Peak> peaks;
};

RawSpectrum finalize_block(BlockState&& block, const std::string& decoy_prefix) {
  RawSpectrum s;
  s.meta.id = block.title.empty()
                  ? "spectrum_" + std::to_string(block.ordinal)
                  : std::move(block.title);
  s.meta.precursor_mz = block.pepmass;
  s.meta.charge = block.charge;
  s.meta.peptide = std::move(block.peptide);
  s.meta.is_decoy =
      !decoy_prefix.empty() &&
      (s.meta.id.starts_with(decoy_prefix) || s.meta.peptide.starts_with(decoy_prefix));

  std::stable_sort(block.peaks.begin(), block.peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.mz < b.mz; });
  s.peaks.reserve(block.peaks.size());
  for (const Peak& p : block.peaks) {
    if (!s.peaks.empty() && s.peaks.back().mz == p.mz) {
      s.peaks.back().intensity += p.intensity;  // duplicate m/z: merge
    } else {
      s.peaks.push_back(p);
    }
  }
  return s;
}

}  // namespace

std::vector<RawSpectrum> parse_mgf(std::istream& in, const std::string& decoy_prefix) {
  std::vector<RawSpectrum> spectra;
  std::string raw;
  std::size_t line_no = 0;
  bool inside = false;
  BlockState block;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip(raw);

    if (!inside) {
      if (line.empty() || line.front() == '#') continue;
      if (line == "BEGIN IONS") {
        inside = true;
        block = BlockState{};
        block.begin_line = line_no;
        block.ordinal = spectra.size() + 1;
        continue;
      }
      // Global KEY=VALUE parameters are tolerated and ignored.
      if (line.find('=') != std::string_view::npos &&
          std::isalpha(static_cast<unsigned char>(line.front()))) {
        continue;
      }
      throw ParseError(line_no, "unexpected content outside BEGIN IONS/END IONS");
    }

    if (line.empty()) continue;
    if (line == "END IONS") {
      if (!block.has_pepmass) {
        throw ParseError(block.begin_line, "spectrum block is missing PEPMASS");
      }
      spectra.push_back(finalize_block(std::move(block), decoy_prefix));
      inside = false;
      continue;
    }
    if (line == "BEGIN IONS") {
      throw ParseError(line_no, "BEGIN IONS inside an open spectrum block");
    }

    if (std::isalpha(static_cast<unsigned char>(line.front()))) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError(line_no, "expected KEY=VALUE header or peak line");
      }
      const std::string_view key = line.substr(0, eq);
      const std::string_view value = strip(line.substr(eq + 1));
      if (key == "PEPMASS") {
        double mass = 0.0;
        if (!parse_double(first_token(value), mass) || !(mass > 0.0)) {
          throw ParseError(line_no, "PEPMASS must be a positive number");
        }
        block.pepmass = mass;
        block.has_pepmass = true;
      } else if (key == "CHARGE") {
        if (!parse_charge(value, block.charge)) {
          throw ParseError(line_no, "CHARGE must be a positive integer like 2+");
        }
      } else if (key == "TITLE") {
        block.title = std::string(value);
      } else if (key == "SEQ") {
        block.peptide = std::string(value);
      }
      // Other keys (RTINSECONDS, SCANS, ...) carry no information we use.
      continue;
    }

    // Peak line: "mz intensity", extra columns ignored.
    std::string_view rest = line;
    const std::string_view mz_tok = first_token(rest);
    rest = strip(rest.substr(mz_tok.size()));
    const std::string_view int_tok = first_token(rest);
    Peak p;
    if (!parse_double(mz_tok, p.mz) || !parse_double(int_tok, p.intensity)) {
      throw ParseError(line_no, "peak line must be two numbers: m/z intensity");
    }
    if (!(p.mz > 0.0)) throw ParseError(line_no, "peak m/z must be positive");
    if (!(p.intensity >= 0.0)) {
      throw ParseError(line_no, "peak intensity must be non-negative");
    }
    block.peaks.push_back(p);
  }

  if (inside) {
    throw ParseError(block.begin_line, "spectrum block not closed by END IONS");
  }
  return spectra;
}

std::vector<RawSpectrum> parse_mgf_file(const std::filesystem::path& path,
                                        const std::string& decoy_prefix) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_mgf(in, decoy_prefix);
}

void write_mgf(std::ostream& out, std::span<const RawSpectrum> spectra) {
  char buf[64];
  for (const RawSpectrum& s : spectra) {
    out << "BEGIN IONS\n";
    out << "TITLE=" << s.meta.id << '\n';
    std::snprintf(buf, sizeof buf, "%.5f", s.meta.precursor_mz);
    out << "PEPMASS=" << buf << '\n';
    if (s.meta.has_known_charge()) {
      out << "CHARGE=" << static_cast<unsigned>(s.meta.charge) << "+\n";
    }
    if (!s.meta.peptide.empty()) {
      out << "SEQ=" << s.meta.peptide << '\n';
    }
    for (const Peak& p : s.peaks) {
      std::snprintf(buf, sizeof buf, "%.5f %.6f", p.mz, p.intensity);
      out << buf << '\n';
    }
    out << "END IONS\n\n";
  }
}

void write_mgf_file(const std::filesystem::path& path,
                    std::span<const RawSpectrum> spectra) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_mgf(out, spectra);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace homs
