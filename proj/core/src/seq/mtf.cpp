#include "listlab/seq/mtf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace listlab::seq {

std::size_t position_of(const ListState& list, Item item) {
  auto it = std::find(list.order.begin(), list.order.end(), item);
  return it == list.order.end() ? 0 : static_cast<std::size_t>(it - list.order.begin()) + 1;
}

std::size_t move_to_front(ListState& list, Item item) {
  auto it = std::find(list.order.begin(), list.order.end(), item);
  if (it == list.order.end()) {
    throw std::invalid_argument("item " + std::to_string(item.id) + " is not in the list");
  }
  const auto pos = static_cast<std::size_t>(it - list.order.begin()) + 1;
  std::rotate(list.order.begin(), it, it + 1);
  return pos;
}

MtfResult mtf_run(const RequestSequence& seq, const ListState& init, CostModel model) {
  MtfResult r{0, init};
  for (Item item : seq) {
    const auto pos = static_cast<std::int64_t>(move_to_front(r.final_state, item));
    r.cost += model == CostModel::kPartial ? pos - 1 : pos;
  }
  return r;
}

}  // namespace listlab::seq
