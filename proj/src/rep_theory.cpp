#include "confstab/rep_theory.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "confstab/complex.hpp"
#include "confstab/errors.hpp"
#include "confstab/homology.hpp"
#include "confstab/parallel.hpp"

namespace confstab {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw InvalidArgument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw InvalidArgument("partition parts must be weakly decreasing");
    size_ += parts_[i];
  }
}

std::string Partition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

Partition Partition::parse(const std::string& text) {
  std::string body = text;
  if (body.size() < 2 || body.front() != '(' || body.back() != ')') throw InvalidArgument("partition must look like (3,1)");
  body = body.substr(1, body.size() - 2);
  std::vector<int> parts;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InvalidArgument("empty partition part");
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw InvalidArgument("partition part is not an integer");
    parts.push_back(v);
  }
  return Partition(std::move(parts));
}

std::vector<Partition> partitions(int k) {
  if (k < 0) throw InvalidArgument("partitions of a negative number");
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(k, k);
  return out;
}

BigInt factorial(int k) {
  if (k < 0) throw InvalidArgument("factorial of a negative number");
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return f;
}

BigInt class_size(const Partition& mu) {
  BigInt denom = 1;
  std::map<int, int> mult;
  for (int p : mu.parts()) ++mult[p];
  for (const auto& [i, m] : mult) {
    BigInt pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(m));
    denom *= pw * factorial(m);
  }
  return factorial(mu.size()) / denom;
}

std::vector<int> class_representative(const Partition& mu) {
  std::vector<int> perm(static_cast<std::size_t>(mu.size()));
  int start = 0;
  for (int p : mu.parts()) {
    for (int i = 0; i < p; ++i) perm[static_cast<std::size_t>(start + i)] = start + (i + 1) % p;
    start += p;
  }
  return perm;
}

Partition cycle_type(const std::vector<int>& perm) {
  const std::size_t k = perm.size();
  std::vector<bool> seen(k, false);
  std::vector<int> lengths;
  for (std::size_t i = 0; i < k; ++i) {
    if (perm[i] < 0 || static_cast<std::size_t>(perm[i]) >= k) throw InvalidArgument("not a permutation");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::vector<int> sorted_images(perm.begin(), perm.end());
  std::sort(sorted_images.begin(), sorted_images.end());
  for (std::size_t i = 0; i < k; ++i) {
    if (sorted_images[i] != static_cast<int>(i)) throw InvalidArgument("not a permutation");
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return Partition(std::move(lengths));
}

namespace {

// Beta-set (first-column hook lengths) recursion: removing a border strip of length r
// moves one bead from b to b - r; the sign counts the beads jumped over.
std::int64_t mn_beta(std::vector<int>& beads, const std::vector<int>& mu, std::size_t idx,
                     std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t>& memo) {
  if (idx == mu.size()) return 1;
  const auto key = std::make_pair(beads, idx);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int r = mu[idx];
  std::int64_t total = 0;
  std::set<int> occupied(beads.begin(), beads.end());
  for (std::size_t i = 0; i < beads.size(); ++i) {
    const int b = beads[i];
    const int target = b - r;
    if (target < 0 || occupied.count(target) != 0) continue;
    int between = 0;
    for (int x : beads) {
      if (x > target && x < b) ++between;
    }
    beads[i] = target;
    std::vector<int> next = beads;
    std::sort(next.begin(), next.end());
    const std::int64_t sub = mn_beta(next, mu, idx + 1, memo);
    beads[i] = b;
    total += (between % 2 == 0 ? 1 : -1) * sub;
  }
  memo.emplace(key, total);
  return total;
}

}  // namespace

std::int64_t mn_character(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) throw InvalidArgument("character of a class of a different size");
  const int len = lambda.length();
  std::vector<int> beads;
  for (int i = 0; i < len; ++i) beads.push_back(lambda.part(i) + len - 1 - i);
  std::sort(beads.begin(), beads.end());
  std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t> memo;
  return mn_beta(beads, mu.parts(), 0, memo);
}

BigInt hook_length_dimension(const Partition& lambda) {
  BigInt hooks = 1;
  for (int i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < lambda.part(i); ++j) {
      int below = 0;
      while (i + below + 1 < lambda.length() && lambda.part(i + below + 1) > j) ++below;
      hooks *= lambda.part(i) - j + below;
    }
  }
  return factorial(lambda.size()) / hooks;
}

std::vector<std::vector<std::int64_t>> character_table(int k) {
  const auto parts = partitions(k);
  std::vector<std::vector<std::int64_t>> table(parts.size(), std::vector<std::int64_t>(parts.size(), 0));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < parts.size(); ++j) table[i][j] = mn_character(parts[i], parts[j]);
  }
  return table;
}

bool padding_valid(const Partition& mu, int k) { return k - mu.size() >= mu.part(0); }

Partition pad(const Partition& mu, int k) {
  if (!padding_valid(mu, k)) throw InvalidArgument("padding " + mu.to_string() + " to " + std::to_string(k) + " is invalid");
  std::vector<int> parts;
  if (k - mu.size() > 0) parts.push_back(k - mu.size());
  parts.insert(parts.end(), mu.parts().begin(), mu.parts().end());
  return Partition(std::move(parts));
}

Partition unpad(const Partition& lambda) {
  if (lambda.length() == 0) return lambda;
  return Partition(std::vector<int>(lambda.parts().begin() + 1, lambda.parts().end()));
}

namespace {

BigInt integral_multiplicity(Rational c, const std::string& label) {
  c.canonicalize();
  if (c.get_den() != 1) throw CorruptedCharacter("multiplicity of " + label + " is not an integer: " + c.get_str());
  if (c < 0) throw CorruptedCharacter("multiplicity of " + label + " is negative: " + c.get_str());
  return c.get_num();
}

}  // namespace

std::map<Partition, BigInt> decompose(const std::vector<Rational>& values, int k) {
  const auto parts = partitions(k);
  if (values.size() != parts.size()) throw InvalidArgument("need one character value per conjugacy class");
  std::vector<BigInt> sizes;
  for (const auto& mu : parts) sizes.push_back(class_size(mu));
  const BigInt order = factorial(k);
  std::map<Partition, BigInt> out;
  for (const auto& lambda : parts) {
    Rational sum = 0;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      sum += Rational(sizes[j]) * values[j] * Rational(static_cast<long>(mn_character(lambda, parts[j])));
    }
    BigInt c = integral_multiplicity(sum / Rational(order), lambda.to_string());
    if (c != 0) out.emplace(lambda, std::move(c));
  }
  return out;
}

std::map<std::pair<Partition, Partition>, BigInt> decompose_product(const std::vector<std::vector<Rational>>& values,
                                                                    int k1, int k2) {
  const auto p1 = partitions(k1);
  const auto p2 = partitions(k2);
  if (values.size() != p1.size()) throw InvalidArgument("need one character value per product class");
  for (const auto& row : values) {
    if (row.size() != p2.size()) throw InvalidArgument("need one character value per product class");
  }
  const auto t1 = character_table(k1);
  const auto t2 = character_table(k2);
  const BigInt order = factorial(k1) * factorial(k2);
  std::map<std::pair<Partition, Partition>, BigInt> out;
  for (std::size_t a = 0; a < p1.size(); ++a) {
    for (std::size_t b = 0; b < p2.size(); ++b) {
      Rational sum = 0;
      for (std::size_t i = 0; i < p1.size(); ++i) {
        for (std::size_t j = 0; j < p2.size(); ++j) {
          sum += Rational(class_size(p1[i]) * class_size(p2[j])) * values[i][j] *
                 Rational(static_cast<long>(t1[a][i] * t2[b][j]));
        }
      }
      BigInt c = integral_multiplicity(sum / Rational(order), p1[a].to_string() + "x" + p2[b].to_string());
      if (c != 0) out.emplace(std::make_pair(p1[a], p2[b]), std::move(c));
    }
  }
  return out;
}

namespace {

struct ActionContext {
  CubeComplex complex;
  HomologyPresentation presentation;
};

ActionContext prepare(const FamilyDescriptor& family, const FamilySizes& sizes, int n, int q,
                      const CharacterOptions& options) {
  if (family.kind != FamilyKind::WedgeFI) throw InvalidArgument("summand permutations act on WedgeFI families only");
  if (static_cast<int>(sizes.size()) != family.arity()) throw InvalidArgument("one size per family coordinate");
  for (int k : sizes) {
    if (k > options.max_k) throw InvalidArgument("size " + std::to_string(k) + " exceeds the configured maximum");
  }
  ActionContext ctx;
  ctx.complex = build_model(realize_family(family, sizes), n, {}, BuildOptions{options.max_cells});
  ctx.presentation = homology(ctx.complex, q);
  return ctx;
}

Rational trace_of(const ActionContext& ctx, const FamilyDescriptor& family, const FamilySizes& sizes,
                  const std::vector<std::vector<int>>& perms) {
  const GraphAutomorphism a = summand_permutation(family, sizes, perms);
  const ChainAutomorphism phi = permutation_action_map(ctx.complex, a);
  return trace(induced_homology_matrix(ctx.presentation, phi));
}

}  // namespace

Rational homology_character(const FamilyDescriptor& family, const FamilySizes& sizes,
                            const std::vector<std::vector<int>>& perms, int n, int q,
                            const CharacterOptions& options) {
  const ActionContext ctx = prepare(family, sizes, n, q, options);
  return trace_of(ctx, family, sizes, perms);
}

CharacterReport character_report(const FamilyDescriptor& family, const FamilySizes& sizes, int n, int q,
                                 const CharacterOptions& options) {
  if (family.arity() < 1 || family.arity() > 2) throw InvalidArgument("characters are implemented for one or two coordinates");
  const ActionContext ctx = prepare(family, sizes, n, q, options);

  std::vector<std::vector<Partition>> classes;
  if (family.arity() == 1) {
    for (const auto& mu : partitions(sizes[0])) classes.push_back({mu});
  } else {
    for (const auto& a : partitions(sizes[0])) {
      for (const auto& b : partitions(sizes[1])) classes.push_back({a, b});
    }
  }
  const auto values = parallel_map(classes.size(), options.jobs, [&](std::size_t i) {
    std::vector<std::vector<int>> perms;
    for (const auto& mu : classes[i]) perms.push_back(class_representative(mu));
    return trace_of(ctx, family, sizes, perms);
  });

  CharacterReport report;
  report.sizes = sizes;
  report.q = q;
  report.n = n;
  report.betti = ctx.presentation.betti();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    BigInt size = 1;
    for (const auto& mu : classes[i]) size *= class_size(mu);
    report.class_data.push_back({classes[i], size, values[i]});
  }
  if (family.arity() == 1) {
    for (auto& [lambda, c] : decompose(values, sizes[0])) report.multiplicities.emplace(std::vector<Partition>{unpad(lambda)}, c);
  } else {
    const std::size_t width = partitions(sizes[1]).size();
    std::vector<std::vector<Rational>> grid;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i % width == 0) grid.emplace_back();
      grid.back().push_back(values[i]);
    }
    for (auto& [pair, c] : decompose_product(grid, sizes[0], sizes[1])) {
      report.multiplicities.emplace(std::vector<Partition>{unpad(pair.first), unpad(pair.second)}, c);
    }
  }
  return report;
}

BigInt padded_dimension(const std::vector<Partition>& unpadded, const std::vector<int>& sizes) {
  if (unpadded.size() != sizes.size()) throw InvalidArgument("one partition per coordinate");
  BigInt dim = 1;
  for (std::size_t i = 0; i < sizes.size(); ++i) dim *= hook_length_dimension(pad(unpadded[i], sizes[i]));
  return dim;
}

StabilityVerdict stability_verdict(const std::vector<CharacterReport>& reports) {
  if (reports.size() < 2) throw InvalidArgument("a stability window needs at least two sizes");
  const std::size_t arity = reports.front().sizes.size();
  StabilityVerdict v;
  std::set<std::vector<Partition>> labels;
  for (const auto& r : reports) {
    if (r.sizes.size() != arity) throw InvalidArgument("window mixes families of different arity");
    BigInt total = 0;
    for (const auto& [label, c] : r.multiplicities) {
      total += c * padded_dimension(label, r.sizes);
      labels.insert(label);
    }
    if (total != r.betti) {
      throw CorruptedCharacter("multiplicities times dimensions give " + total.get_str() + " but the Betti number is " +
                               std::to_string(r.betti));
    }
    v.window.push_back(r.sizes);
  }
  v.stable = true;
  for (const auto& label : labels) {
    bool valid = true;
    for (const auto& r : reports) {
      for (std::size_t i = 0; i < arity; ++i) valid = valid && padding_valid(label[i], r.sizes[i]);
    }
    std::string name;
    for (const auto& p : label) name += p.to_string();
    if (!valid) {
      v.warnings.push_back("padding of " + name + " is invalid somewhere in the window; row excluded");
      continue;
    }
    std::vector<BigInt> row;
    for (const auto& r : reports) {
      auto it = r.multiplicities.find(label);
      row.push_back(it == r.multiplicities.end() ? BigInt(0) : it->second);
    }
    if (!std::all_of(row.begin(), row.end(), [&](const BigInt& x) { return x == row.front(); })) v.stable = false;
    v.table.emplace(label, std::move(row));
  }
  return v;
}

}  // namespace confstab
