#include "rankone/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rankone {

json group_to_json(const RankOneGroup& g) {
  return json{{"family", family_name(g)}, {"n", g.n}};
}

RankOneGroup group_from_json(const json& j) {
  return make_group(j.at("family").get<std::string>(), j.at("n").get<int>());
}

json element_to_json(const GroupElement& e) {
  json entries = json::array();
  const int d = e.dim();
  if (e.kind == EntryKind::exact_rational) {
    const auto& m = e.ex;
    for (int i = 0; i < d * d; ++i) {
      Rat re(m.re[static_cast<std::size_t>(i)], m.den);
      if (m.is_real()) {
        entries.push_back(format_rat(re));
      } else {
        Rat im(m.im[static_cast<std::size_t>(i)], m.den);
        entries.push_back(json::array({format_rat(re), format_rat(im)}));
      }
    }
  } else {
    bool real = e.group.field == Field::real;
    for (const auto& v : e.fl.a) {
      if (real)
        entries.push_back(v.real());
      else
        entries.push_back(json::array({v.real(), v.imag()}));
    }
  }
  return entries;
}

GroupElement element_from_json(const RankOneGroup& g, const json& j,
                               EntryKind kind) {
  const int d = g.dim();
  const std::size_t nn = static_cast<std::size_t>(d) * d;
  if (!j.is_array() || j.size() != nn)
    throw std::invalid_argument("matrix entry count does not match group");
  if (kind == EntryKind::exact_rational) {
    std::vector<Rat> re(nn), im;
    bool complex_entries = false;
    for (std::size_t i = 0; i < nn; ++i)
      if (j[i].is_array()) complex_entries = true;
    if (complex_entries) im.assign(nn, Rat(0));
    for (std::size_t i = 0; i < nn; ++i) {
      if (j[i].is_array()) {
        re[i] = parse_rat(j[i][0].get<std::string>());
        im[i] = parse_rat(j[i][1].get<std::string>());
      } else if (j[i].is_string()) {
        re[i] = parse_rat(j[i].get<std::string>());
      } else {
        re[i] = Rat(j[i].get<long long>());
      }
    }
    return element_from_exact(g, exact_from_rationals(d, re, im));
  }
  FloatMat m;
  m.dim = d;
  m.a.resize(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    if (j[i].is_array())
      m.a[i] = std::complex<double>(j[i][0].get<double>(), j[i][1].get<double>());
    else if (j[i].is_string())
      m.a[i] = to_double(parse_rat(j[i].get<std::string>()));
    else
      m.a[i] = j[i].get<double>();
  }
  return element_from_float(g, std::move(m));
}

json spec_to_json(const DiscreteGroupSpec& spec) {
  json j;
  j["group"] = group_to_json(spec.group);
  j["label"] = spec.label;
  bool exact = !spec.generators.empty() &&
               spec.generators.front().kind == EntryKind::exact_rational;
  j["entry_kind"] = exact ? "exact_rational" : "float";
  json gens = json::array();
  for (const auto& g : spec.generators) gens.push_back(element_to_json(g));
  j["generators"] = gens;
  return j;
}

DiscreteGroupSpec spec_from_json(const json& j) {
  RankOneGroup g = group_from_json(j.at("group"));
  EntryKind kind = j.at("entry_kind").get<std::string>() == "exact_rational"
                       ? EntryKind::exact_rational
                       : EntryKind::floating;
  std::vector<GroupElement> gens;
  for (const auto& gj : j.at("generators"))
    gens.push_back(element_from_json(g, gj, kind));
  std::string label = j.value("label", "spec");
  return make_spec(g, std::move(gens), label);
}

json cusp_model_to_json(const CuspModel& m) {
  return json{{"space", cusp_space_token(m)}, {"n", m.n}};
}

CuspModel cusp_model_from_json(const json& j) {
  return make_cusp_model(j.at("space").get<std::string>(), j.at("n").get<int>());
}

std::string spec_hash(const DiscreteGroupSpec& spec) {
  std::string dump = spec_to_json(spec).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

constexpr std::uint64_t kBallMagic = 0x524f42414c4c3031ULL;

template <typename T>
void write_vec(std::ofstream& out, const std::vector<T>& v) {
  std::uint64_t n = v.size();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(n * sizeof(T)));
}

template <typename T>
bool read_vec(std::ifstream& in, std::vector<T>& v) {
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in) return false;
  v.resize(n);
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(n * sizeof(T)));
  return static_cast<bool>(in);
}

}  // namespace

void save_ball(const OrbitBall& ball, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write cache file " + path);
  std::uint64_t magic = kBallMagic;
  out.write(reinterpret_cast<const char*>(&magic), sizeof magic);
  std::string hash = spec_hash(ball.spec);
  std::uint64_t hl = hash.size();
  out.write(reinterpret_cast<const char*>(&hl), sizeof hl);
  out.write(hash.data(), static_cast<std::streamsize>(hash.size()));
  double r = ball.radius, tol = ball.tolerance;
  out.write(reinterpret_cast<const char*>(&r), sizeof r);
  out.write(reinterpret_cast<const char*>(&tol), sizeof tol);
  std::uint8_t flags = (ball.exact_storage() ? 1 : 0) |
                       (ball.complete ? 2 : 0) |
                       (ball.collision_warning ? 4 : 0) |
                       (ball.complex_storage() ? 8 : 0);
  out.write(reinterpret_cast<const char*>(&flags), sizeof flags);
  std::int32_t dim = ball.dim();
  out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  write_vec(out, ball.displacements());
  write_vec(out, ball.word_lengths());
  if (ball.exact_storage()) {
    write_vec(out, ball.exact_entries());
    write_vec(out, ball.exact_dens());
  } else {
    write_vec(out, ball.float_entries());
  }
}

bool load_ball(const DiscreteGroupSpec& spec, double R, const std::string& path,
               OrbitBall& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::uint64_t magic = 0;
  in.read(reinterpret_cast<char*>(&magic), sizeof magic);
  if (magic != kBallMagic) return false;
  std::uint64_t hl = 0;
  in.read(reinterpret_cast<char*>(&hl), sizeof hl);
  if (!in || hl > 64) return false;
  std::string hash(hl, '\0');
  in.read(hash.data(), static_cast<std::streamsize>(hl));
  if (hash != spec_hash(spec)) return false;
  double r = 0, tol = 0;
  in.read(reinterpret_cast<char*>(&r), sizeof r);
  in.read(reinterpret_cast<char*>(&tol), sizeof tol);
  if (r != R) return false;
  std::uint8_t flags = 0;
  in.read(reinterpret_cast<char*>(&flags), sizeof flags);
  std::int32_t dim = 0;
  in.read(reinterpret_cast<char*>(&dim), sizeof dim);
  if (!in || dim != spec.group.dim()) return false;

  OrbitBall ball;
  ball.spec = spec;
  ball.radius = r;
  ball.tolerance = tol;
  ball.complete = flags & 2;
  ball.collision_warning = flags & 4;
  ball.dedup = (flags & 1) ? DedupKind::exact : DedupKind::rounded;
  ball.set_storage(flags & 1, flags & 8, dim);

  std::vector<double> disp;
  std::vector<std::uint16_t> wl;
  if (!read_vec(in, disp) || !read_vec(in, wl)) return false;
  if (flags & 1) {
    std::vector<long long> entries, dens;
    if (!read_vec(in, entries) || !read_vec(in, dens)) return false;
    const std::size_t nn = static_cast<std::size_t>(dim) * dim;
    const std::size_t stride = (flags & 8) ? 2 * nn : nn;
    if (entries.size() != stride * disp.size() || dens.size() != disp.size())
      return false;
    for (std::size_t i = 0; i < disp.size(); ++i) {
      ExactMat m;
      m.dim = dim;
      m.den = dens[i];
      m.re.assign(entries.begin() + static_cast<std::ptrdiff_t>(i * stride),
                  entries.begin() + static_cast<std::ptrdiff_t>(i * stride + nn));
      if (flags & 8)
        m.im.assign(entries.begin() + static_cast<std::ptrdiff_t>(i * stride + nn),
                    entries.begin() + static_cast<std::ptrdiff_t>((i + 1) * stride));
      ball.push_exact(m, disp[i], wl[i]);
    }
  } else {
    std::vector<std::complex<double>> entries;
    if (!read_vec(in, entries)) return false;
    const std::size_t nn = static_cast<std::size_t>(dim) * dim;
    if (entries.size() != nn * disp.size()) return false;
    for (std::size_t i = 0; i < disp.size(); ++i) {
      FloatMat m;
      m.dim = dim;
      m.a.assign(entries.begin() + static_cast<std::ptrdiff_t>(i * nn),
                 entries.begin() + static_cast<std::ptrdiff_t>((i + 1) * nn));
      ball.push_float(m, disp[i], wl[i]);
    }
  }
  out = std::move(ball);
  return true;
}

std::string ball_cache_path(const std::string& dir,
                            const DiscreteGroupSpec& spec, double R) {
  if (dir.empty()) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "ball_%s_R%.6g.bin", spec_hash(spec).c_str(), R);
  return (std::filesystem::path(dir) / buf).string();
}

OrbitBall enumerate_ball_cached(const DiscreteGroupSpec& spec, double R,
                                std::size_t budget, const std::string& cache_dir) {
  std::string path = ball_cache_path(cache_dir, spec, R);
  OrbitBall ball;
  if (!path.empty() && load_ball(spec, R, path, ball)) return ball;
  ball = enumerate_ball(spec, R, budget);
  if (!path.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    if (!ec) save_ball(ball, path);
  }
  return ball;
}

std::string counting_curve_csv(
    const std::vector<std::pair<double, std::size_t>>& curve) {
  std::ostringstream out;
  out << "R,N,logN\n";
  char line[96];
  for (const auto& [r, n] : curve) {
    std::snprintf(line, sizeof line, "%.6g,%zu,%.12g\n", r, n,
                  n > 0 ? std::log(static_cast<double>(n)) : 0.0);
    out << line;
  }
  return out.str();
}

}  // namespace rankone
