#include "listlab/seq/types.hpp"

namespace listlab::seq {

RequestSequence make_sequence(std::initializer_list<std::uint32_t> ids) {
  return make_sequence(std::vector<std::uint32_t>(ids));
}

RequestSequence make_sequence(const std::vector<std::uint32_t>& ids) {
  RequestSequence seq;
  seq.reserve(ids.size());
  for (auto id : ids) seq.emplace_back(id);
  return seq;
}

ListState make_list(std::initializer_list<std::uint32_t> ids) {
  return ListState{make_sequence(ids)};
}

ListState make_list(const std::vector<std::uint32_t>& ids) {
  return ListState{make_sequence(ids)};
}

ListState identity_list(std::size_t ell) {
  ListState list;
  list.order.reserve(ell);
  for (std::size_t i = 1; i <= ell; ++i) list.order.emplace_back(static_cast<std::uint32_t>(i));
  return list;
}

std::vector<std::uint32_t> ids_of(const RequestSequence& seq) {
  std::vector<std::uint32_t> out;
  out.reserve(seq.size());
  for (auto it : seq) out.push_back(it.id);
  return out;
}

}  // namespace listlab::seq
