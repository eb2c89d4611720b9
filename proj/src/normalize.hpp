/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string_view>

#include "syntax.hpp"

namespace omqe {

// Thin rewriter into normal form: conjunctive heads are split, several
// concepts on an existential variable go through a fresh concept, and
// tree-shaped bodies deeper than one role step are folded bottom-up into
// fresh concepts N1, N2, ... Throws InputError on shapes it cannot handle.
KnowledgeBase normalize_kb(std::string_view text);

} // namespace omqe
