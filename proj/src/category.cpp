#include "stratcat/category.hpp"

#include <algorithm>

namespace stratcat {

const Morphism* StratifiedCategoryData::find(const std::string& id) const {
  auto it = id_index.find(id);
  return it == id_index.end() ? nullptr : &morphisms[it->second];
}

const std::vector<int>& StratifiedCategoryData::hom(int src, int dst) const {
  static const std::vector<int> empty;
  auto it = homs.find({src, dst});
  return it == homs.end() ? empty : it->second;
}

namespace {

bool plain_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id)
    if (c == ',' || c == '(' || c == ')' || c == ' ' || c == '\t' || c == '\n') return false;
  return true;
}

void add_morphism(StratifiedCategoryData& data, Morphism m) {
  if (!plain_id(m.id))
    throw schema_error("category: morphism id '" + m.id + "' must be nonempty without ',()' or spaces");
  int index = static_cast<int>(data.morphisms.size());
  if (!data.id_index.emplace(m.id, index).second)
    throw schema_error("category: duplicate morphism id '" + m.id + "'");
  data.homs[{m.src, m.dst}].push_back(index);
  data.morphisms.push_back(std::move(m));
}

}  // namespace

StratifiedCategoryData load_category(const nlohmann::json& json_data) {
  if (!json_data.is_object()) throw schema_error("category: expected an object");
  if (!json_data.contains("poset")) throw schema_error("category: missing 'poset'");
  StratifiedCategoryData data;
  data.poset = load_poset(json_data["poset"]);

  data.identity_index.resize(data.poset.size());
  for (int x = 0; x < data.poset.size(); ++x) {
    Morphism ident;
    ident.id = "id_" + data.poset.elements[x];
    ident.src = ident.dst = x;
    ident.label.poset = &data.poset;
    ident.label.entries = {x};
    ident.is_identity = true;
    data.identity_index[x] = static_cast<int>(data.morphisms.size());
    add_morphism(data, std::move(ident));
  }

  if (!json_data.contains("homs") || !json_data["homs"].is_object())
    throw schema_error("category: missing 'homs' object");
  for (auto it = json_data["homs"].begin(); it != json_data["homs"].end(); ++it) {
    const std::string& key = it.key();
    std::size_t arrow = key.find("->");
    if (arrow == std::string::npos)
      throw schema_error("category: hom key '" + key + "' must look like 'a->b'");
    int src = data.poset.index_of(key.substr(0, arrow));
    int dst = data.poset.index_of(key.substr(arrow + 2));
    if (src < 0 || dst < 0) throw schema_error("category: hom key '" + key + "' names unknown objects");
    if (!it.value().is_array())
      throw schema_error("category: hom '" + key + "' must be an array of morphisms");
    for (const auto& entry : it.value()) {
      if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string())
        throw schema_error("category: morphisms need a string 'id'");
      Morphism m;
      m.id = entry["id"].get<std::string>();
      m.src = src;
      m.dst = dst;
      if (!entry.contains("label") || !entry["label"].is_array())
        throw schema_error("category: morphism '" + m.id + "' needs a 'label' array");
      std::vector<int> path;
      for (const auto& name : entry["label"]) {
        if (!name.is_string())
          throw schema_error("category: label of '" + m.id + "' must hold object names");
        int obj = data.poset.index_of(name.get<std::string>());
        if (obj < 0) throw schema_error("category: label of '" + m.id + "' names an unknown object");
        path.push_back(obj);
      }
      if (path.empty() || path.front() != src || path.back() != dst)
        throw schema_error("category: label of '" + m.id + "' must run from source to target");
      for (std::size_t k = 0; k + 1 < path.size(); ++k)
        if (!data.poset.lt(path[k], path[k + 1]))
          throw schema_error("category: label of '" + m.id + "' must strictly increase");
      m.label.poset = &data.poset;
      m.label.entries = std::move(path);
      if (entry.contains("weight")) {
        if (!entry["weight"].is_number_integer())
          throw schema_error("category: weight of '" + m.id + "' must be an integer");
        m.weight = Int(entry["weight"].get<long long>());
      }
      add_morphism(data, std::move(m));
    }
  }

  if (json_data.contains("compose")) {
    if (!json_data["compose"].is_object())
      throw schema_error("category: 'compose' must be an object");
    for (auto it = json_data["compose"].begin(); it != json_data["compose"].end(); ++it) {
      const std::string& key = it.key();
      if (key.size() < 5 || key.front() != '(' || key.back() != ')')
        throw schema_error("category: compose key '" + key + "' must look like '(g,f)'");
      std::string inner = key.substr(1, key.size() - 2);
      std::size_t comma = inner.find(',');
      if (comma == std::string::npos)
        throw schema_error("category: compose key '" + key + "' must look like '(g,f)'");
      const Morphism* g = data.find(inner.substr(0, comma));
      const Morphism* f = data.find(inner.substr(comma + 1));
      if (g == nullptr || f == nullptr)
        throw schema_error("category: compose key '" + key + "' names unknown morphisms");
      if (!it.value().is_string())
        throw schema_error("category: compose value for '" + key + "' must be a morphism id");
      const Morphism* h = data.find(it.value().get<std::string>());
      if (h == nullptr)
        throw schema_error("category: compose value '" + it.value().get<std::string>() +
                           "' is not a morphism");
      int g_index = data.id_index.at(g->id);
      int f_index = data.id_index.at(f->id);
      if (!data.compose_table.emplace(std::make_pair(g_index, f_index), data.id_index.at(h->id))
               .second)
        throw schema_error("category: duplicate compose entry '" + key + "'");
    }
  }

  if (json_data.contains("grading")) {
    if (!json_data["grading"].is_object())
      throw schema_error("category: 'grading' must be an object");
    data.grading.assign(data.poset.size(), 0);
    for (int x = 0; x < data.poset.size(); ++x) {
      const std::string& name = data.poset.elements[x];
      if (!json_data["grading"].contains(name))
        throw schema_error("category: grading misses object '" + name + "'");
      if (!json_data["grading"][name].is_number_integer())
        throw schema_error("category: grading of '" + name + "' must be an integer");
      data.grading[x] = json_data["grading"][name].get<long long>();
    }
    for (auto it = json_data["grading"].begin(); it != json_data["grading"].end(); ++it)
      if (data.poset.index_of(it.key()) < 0)
        throw schema_error("category: grading for unknown object '" + it.key() + "'");
    data.has_grading = true;
  }
  return data;
}

int compose_of(const StratifiedCategoryData& data, int g, int f) {
  const Morphism& second = data.morphisms.at(g);
  const Morphism& first = data.morphisms.at(f);
  if (first.dst != second.src) throw usage_error("compose: morphisms not composable");
  if (first.is_identity) return g;
  if (second.is_identity) return f;
  auto it = data.compose_table.find({g, f});
  if (it == data.compose_table.end())
    throw usage_error("compose: no table entry for (" + second.id + "," + first.id + ")");
  return it->second;
}

CategoryReport validate_category(const StratifiedCategoryData& data) {
  CategoryReport report;
  PosetReport poset_report = validate_poset(data.poset);
  for (const std::string& violation : poset_report.violations)
    report.errors.push_back("poset: " + violation);

  std::vector<int> non_identities;
  for (int k = 0; k < static_cast<int>(data.morphisms.size()); ++k) {
    const Morphism& m = data.morphisms[k];
    if (m.is_identity) continue;
    non_identities.push_back(k);
    if (m.src == m.dst)
      report.errors.push_back("morphism '" + m.id + "': a single object carries only its identity");
    else if (!data.poset.lt(m.src, m.dst))
      report.errors.push_back("morphism '" + m.id + "': endpoints are not ordered");
  }

  for (const auto& [key, value] : data.compose_table) {
    const Morphism& g = data.morphisms[key.first];
    const Morphism& f = data.morphisms[key.second];
    const Morphism& h = data.morphisms[value];
    if (f.dst != g.src) {
      report.errors.push_back("compose (" + g.id + "," + f.id + "): pair is not composable");
      continue;
    }
    if (g.is_identity || f.is_identity) {
      const Morphism& forced = g.is_identity ? f : g;
      if (h.id != forced.id)
        report.errors.push_back("compose (" + g.id + "," + f.id + "): identity must act trivially");
      continue;
    }
    if (h.src != f.src || h.dst != g.dst)
      report.errors.push_back("compose (" + g.id + "," + f.id + "): result endpoints are wrong");
    else if (!(path_compose_condense(f.label, g.label) == h.label))
      report.errors.push_back("compose (" + g.id + "," + f.id + "): label must be the joined path");
  }

  for (int f : non_identities)
    for (int g : non_identities) {
      if (data.morphisms[f].dst != data.morphisms[g].src) continue;
      if (data.compose_table.find({g, f}) == data.compose_table.end())
        report.errors.push_back("compose (" + data.morphisms[g].id + "," + data.morphisms[f].id +
                                "): missing table entry");
    }

  if (report.errors.empty()) {
    for (int f : non_identities)
      for (int g : non_identities) {
        if (data.morphisms[f].dst != data.morphisms[g].src) continue;
        for (int h : non_identities) {
          if (data.morphisms[g].dst != data.morphisms[h].src) continue;
          int left = compose_of(data, h, compose_of(data, g, f));
          int right = compose_of(data, compose_of(data, h, g), f);
          if (left != right)
            report.errors.push_back("associativity fails on (" + data.morphisms[h].id + "," +
                                    data.morphisms[g].id + "," + data.morphisms[f].id + ")");
        }
      }
  }

  if (data.has_grading)
    for (int k : non_identities) {
      const Morphism& m = data.morphisms[k];
      if (data.grading[m.src] <= data.grading[m.dst])
        report.warnings.push_back("morphism '" + m.id + "': grading does not drop from '" +
                                  data.poset.elements[m.src] + "' to '" +
                                  data.poset.elements[m.dst] + "'");
    }
  return report;
}

StratifiedCategoryData load_valid_category(const nlohmann::json& json_data) {
  StratifiedCategoryData data = load_category(json_data);
  CategoryReport report = validate_category(data);
  if (!report.ok()) throw usage_error("invalid category: " + report.errors.front());
  return data;
}

StratifiedCategoryData builtin_example(const std::string& name) {
  static const char* other_sphere = R"json({
    "poset": {
      "elements": ["a", "b", "c", "d"],
      "leq": [["a", "b"], ["b", "d"], ["c", "b"]],
      "f": {"a": "3", "b": "1", "c": "2", "d": "0"}
    },
    "homs": {
      "a->b": [{"id": "t_ab", "label": ["a", "b"], "weight": 1}],
      "c->b": [{"id": "t_cb", "label": ["c", "b"], "weight": 1}],
      "b->d": [
        {"id": "t_bd_left", "label": ["b", "d"], "weight": 1},
        {"id": "t_bd_right", "label": ["b", "d"], "weight": -1}
      ],
      "a->d": [
        {"id": "t_ad", "label": ["a", "d"], "weight": 1},
        {"id": "t_ad_via_b_left", "label": ["a", "b", "d"], "weight": 1},
        {"id": "t_ad_via_b_right", "label": ["a", "b", "d"], "weight": -1}
      ],
      "c->d": [
        {"id": "t_cd", "label": ["c", "d"], "weight": 1},
        {"id": "t_cd_via_b_left", "label": ["c", "b", "d"], "weight": 1},
        {"id": "t_cd_via_b_right", "label": ["c", "b", "d"], "weight": -1}
      ]
    },
    "compose": {
      "(t_bd_left,t_ab)": "t_ad_via_b_left",
      "(t_bd_right,t_ab)": "t_ad_via_b_right",
      "(t_bd_left,t_cb)": "t_cd_via_b_left",
      "(t_bd_right,t_cb)": "t_cd_via_b_right"
    },
    "grading": {"a": 2, "b": 1, "c": 2, "d": 0}
  })json";
  static const char* round_sphere = R"json({
    "poset": {
      "elements": ["n", "s"],
      "leq": [["n", "s"]],
      "f": {"n": "1", "s": "0"}
    },
    "homs": {
      "n->s": [{"id": "t_ns", "label": ["n", "s"], "weight": 1}]
    },
    "compose": {},
    "grading": {"n": 2, "s": 0}
  })json";
  if (name == "other_sphere") return load_valid_category(nlohmann::json::parse(other_sphere));
  if (name == "round_sphere") return load_valid_category(nlohmann::json::parse(round_sphere));
  throw usage_error("unknown builtin '" + name + "' (available: other_sphere, round_sphere)");
}

bool unbroken_check(const StratifiedCategoryData& data, const std::vector<std::string>& chain_ids) {
  if (chain_ids.empty()) throw usage_error("unbroken: chain must be nonempty");
  std::vector<int> chain;
  for (const std::string& id : chain_ids) {
    const Morphism* m = data.find(id);
    if (m == nullptr) throw usage_error("unbroken: unknown morphism '" + id + "'");
    chain.push_back(data.id_index.at(id));
  }
  for (std::size_t k = 0; k + 1 < chain.size(); ++k)
    if (data.morphisms[chain[k]].dst != data.morphisms[chain[k + 1]].src)
      throw usage_error("unbroken: chain is not composable");

  for (std::size_t lo = 0; lo < chain.size(); ++lo)
    for (std::size_t hi = lo; hi < chain.size(); ++hi) {
      int composite = chain[lo];
      for (std::size_t k = lo + 1; k <= hi; ++k) composite = compose_of(data, chain[k], composite);
      const Morphism& m = data.morphisms[composite];
      if (!(m.label == maximal_path(data.poset, m.src, m.dst))) return false;
    }
  return true;
}

CoefficientFunctor load_coefficients(const StratifiedCategoryData& data,
                                     const nlohmann::json& json_data) {
  if (!json_data.is_object()) throw schema_error("coefficients: expected an object");
  if (!json_data.contains("dims") || !json_data["dims"].is_object())
    throw schema_error("coefficients: missing 'dims' object");
  CoefficientFunctor functor;
  functor.dims.assign(data.poset.size(), 0);
  for (int x = 0; x < data.poset.size(); ++x) {
    const std::string& name = data.poset.elements[x];
    if (!json_data["dims"].contains(name))
      throw schema_error("coefficients: missing dimension for '" + name + "'");
    if (!json_data["dims"][name].is_number_integer() || json_data["dims"][name].get<long long>() < 0)
      throw schema_error("coefficients: dimension of '" + name + "' must be a nonnegative integer");
    functor.dims[x] = static_cast<int>(json_data["dims"][name].get<long long>());
  }

  if (!json_data.contains("matrices") || !json_data["matrices"].is_object())
    throw schema_error("coefficients: missing 'matrices' object");
  for (const Morphism& m : data.morphisms) {
    if (m.is_identity) continue;
    if (!json_data["matrices"].contains(m.id))
      throw schema_error("coefficients: missing matrix for '" + m.id + "'");
    const auto& rows = json_data["matrices"][m.id];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(functor.dims[m.dst]))
      throw schema_error("coefficients: matrix of '" + m.id + "' needs one row per target rank");
    std::vector<std::vector<Int>> matrix;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(functor.dims[m.src]))
        throw schema_error("coefficients: matrix of '" + m.id + "' needs one column per source rank");
      std::vector<Int> converted;
      for (const auto& cell : row) {
        if (!cell.is_number_integer())
          throw schema_error("coefficients: matrix of '" + m.id + "' must hold integers");
        converted.push_back(Int(cell.get<long long>()));
      }
      matrix.push_back(std::move(converted));
    }
    functor.matrices[m.id] = std::move(matrix);
  }

  for (const auto& [key, value] : data.compose_table) {
    const Morphism& g = data.morphisms[key.first];
    const Morphism& f = data.morphisms[key.second];
    const Morphism& h = data.morphisms[value];
    if (g.is_identity || f.is_identity) continue;
    const auto& mg = functor.matrices.at(g.id);
    const auto& mf = functor.matrices.at(f.id);
    const auto& mh = functor.matrices.at(h.id);
    int rows = functor.dims[g.dst], mid = functor.dims[f.dst], cols = functor.dims[f.src];
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        Int sum(0);
        for (int q = 0; q < mid; ++q) sum += mg[r][q] * mf[q][c];
        if (sum != mh[r][c])
          throw usage_error("coefficients: functoriality fails on (" + g.id + "," + f.id + ")");
      }
  }
  return functor;
}

ChainComplex morse_complex(const StratifiedCategoryData& data, const CoefficientFunctor* coeffs) {
  if (!data.has_grading) throw usage_error("homology needs a grading on the objects");
  long long top = 0;
  for (int x = 0; x < data.poset.size(); ++x) {
    if (data.grading[x] < 0) throw usage_error("homology needs a nonnegative grading");
    top = std::max(top, data.grading[x]);
  }
  auto dim_of = [&](int x) { return coeffs == nullptr ? 1 : coeffs->dims[x]; };

  ChainComplex complex;
  complex.generators.resize(top + 1);
  complex.boundaries.resize(top + 1);
  // offsets[x] = first generator index of object x inside its degree
  std::vector<int> offsets(data.poset.size(), 0);
  std::vector<std::vector<int>> objects_by_degree(top + 1);
  for (int x = 0; x < data.poset.size(); ++x) {
    long long degree = data.grading[x];
    offsets[x] = static_cast<int>(complex.generators[degree].size());
    objects_by_degree[degree].push_back(x);
    for (int k = 0; k < dim_of(x); ++k) {
      std::string name = data.poset.elements[x];
      if (dim_of(x) > 1) name += "#" + std::to_string(k);
      complex.generators[degree].push_back(std::move(name));
    }
  }

  for (long long degree = 1; degree <= top; ++degree) {
    std::size_t rows = complex.generators[degree - 1].size();
    std::size_t cols = complex.generators[degree].size();
    if (rows == 0) continue;  // stays empty
    complex.boundaries[degree].assign(rows, std::vector<Int>(cols, Int(0)));
    auto& matrix = complex.boundaries[degree];
    for (int x : objects_by_degree[degree])
      for (int y : objects_by_degree[degree - 1])
        for (int m_index : data.hom(x, y)) {
          const Morphism& m = data.morphisms[m_index];
          if (m.is_identity) continue;
          for (int r = 0; r < dim_of(y); ++r)
            for (int c = 0; c < dim_of(x); ++c) {
              Int entry = coeffs == nullptr ? Int(1) : coeffs->matrices.at(m.id)[r][c];
              matrix[offsets[y] + r][offsets[x] + c] += m.weight * entry;
            }
        }
  }
  validate_boundary_squared(complex);
  return complex;
}

}  // namespace stratcat
