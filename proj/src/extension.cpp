#include "gerbes/extension.hpp"

namespace gerbes {

CentralExtension central_extension(const CentralExtensionData& data, Int max_order) {
  const auto& S = data.fiber;
  const auto& K = *data.base;
  const auto& F = data.transgression;
  if (!F.site().is_group_base() || !F.site().group().same_table(K) || F.degree() != 2 ||
      !(F.coefficients() == S))
    fail(ErrorKind::InvalidInput, "transgression must be a degree-2 cochain on the base valued in the fiber");
  if (!F.is_normalized()) fail(ErrorKind::InvalidInput, "transgression must be normalized");
  if (auto w = cocycle_violation(F))
    fail(ErrorKind::NotACocycle, "transgression is not a 2-cocycle",
         std::vector<long long>{(*w)[1], (*w)[2], (*w)[3]});

  const Int ns = S.order();
  const int nk = K.order();
  if (ns * nk > max_order) fail(ErrorKind::OrderLimitExceeded, "extension order exceeds cap", {ns * nk});
  const int n = static_cast<int>(ns) * nk;

  Eigen::MatrixXi table(n, n);
  for (Int s1 = 0; s1 < ns; ++s1) {
    auto t1 = S.tuple_of(s1);
    for (int k1 = 0; k1 < nk; ++k1) {
      for (Int s2 = 0; s2 < ns; ++s2) {
        auto t2 = S.tuple_of(s2);
        for (int k2 = 0; k2 < nk; ++k2) {
          std::vector<int> args{k1, k2};
          auto sum = S.add(S.add(t1, t2), F.value(0, args));
          table(static_cast<int>(s1) * nk + k1, static_cast<int>(s2) * nk + k2) =
              static_cast<int>(S.index_of(sum)) * nk + K.mul(k1, k2);
        }
      }
    }
  }
  CentralExtension out;
  out.data = data;
  out.total = FiniteGroup::from_table(table);
  out.fiber_group = S.as_group();
  out.iota = GroupHom{out.fiber_group, out.total, {}};
  out.iota.image.resize(ns);
  for (Int s = 0; s < ns; ++s) out.iota.image[s] = static_cast<int>(s) * nk;
  out.projection = GroupHom{out.total, data.base, {}};
  out.projection.image.resize(n);
  for (int g = 0; g < n; ++g) out.projection.image[g] = g % nk;
  out.section.resize(nk);
  for (int k = 0; k < nk; ++k) out.section[k] = k;
  return out;
}

CentralQuotient quotient_by_central(const GroupPtr& g, const std::vector<int>& fiber_elements) {
  if (!is_subgroup(*g, fiber_elements)) fail(ErrorKind::NotSubgroup, "fiber is not a subgroup");
  if (!is_central(*g, fiber_elements)) fail(ErrorKind::NotCentral, "fiber is not central");

  CentralQuotient out;
  out.fiber = subgroup_as_group(g, fiber_elements);
  out.fiber_abelian = abelian_invariants(*out.fiber.group);
  QuotientResult q = quotient_by_normal(g, fiber_elements);
  out.quotient = q.quotient;
  out.projection = q.projection;
  out.section = q.section;

  Site ksite = Site::group_site(out.quotient);
  AbelianCochain F(ksite, 2, out.fiber_abelian.group);
  const int nk = out.quotient->order();
  for (int k1 = 0; k1 < nk; ++k1)
    for (int k2 = 0; k2 < nk; ++k2) {
      int prod = g->mul(out.section[k1], out.section[k2]);
      int s = g->mul(prod, g->inv(out.section[out.quotient->mul(k1, k2)]));
      int sub_index = out.fiber.index_of[s];
      if (sub_index < 0) fail(ErrorKind::InternalVerificationFailed, "section defect outside the fiber");
      std::vector<int> args{k1, k2};
      F.set(0, args, out.fiber_abelian.tuple_of_element[sub_index]);
    }
  if (cocycle_violation(F))
    fail(ErrorKind::InternalVerificationFailed, "transgression of a quotient is not a cocycle");
  out.transgression = std::move(F);
  return out;
}

}  // namespace gerbes
