#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "obcheck/ast.hpp"

namespace obcheck {

struct CallEvent {
    std::string method;
    int arg_count = 0;
    Span span;  // call site in the main block
};

struct UsageNode;

struct CallNode {
    CallEvent event;
};

struct SeqNode {
    std::vector<UsageNode> children;  // source order
};

struct BranchNode {
    std::unique_ptr<UsageNode> then_tree;
    std::unique_ptr<UsageNode> else_tree;  // null when the if has no else
    Span span;
};

struct LoopNode {
    std::unique_ptr<UsageNode> body;
    Span span;
};

struct UsageNode {
    std::variant<SeqNode, CallNode, BranchNode, LoopNode> node;
};

UsageNode make_call(CallEvent event);
UsageNode make_seq(std::vector<UsageNode> children);
UsageNode make_branch(UsageNode then_tree, std::optional<UsageNode> else_tree, Span span);
UsageNode make_loop(UsageNode body, Span span);

// Call leaves in left-to-right order.
std::vector<CallEvent> flatten_calls(const UsageNode& tree);

struct ObjectUsage {
    std::string var_name;
    std::string class_name;
    Span decl_span;
    UsageNode tree;  // holds only this object's calls
};

struct UsageSet {
    std::vector<ObjectUsage> usages;                              // declaration order
    std::vector<std::pair<std::string, CallEvent>> orphan_calls;  // undeclared receivers
    std::string source_file;

    const ObjectUsage* find(std::string_view var_name) const;
};

class ExtractError : public CompileError {
public:
    using CompileError::CompileError;
};

// Projects the main block's control flow onto each declared object.
// Branch/Loop nodes are kept even when a side has no calls for the object.
// Calls whose receiver is not declared before them land in orphan_calls.
// Throws ExtractError when a variable name is declared twice.
UsageSet extract_usages(const Program& program);

const ClassDecl* lookup_class(const Program& program, std::string_view name);

}  // namespace obcheck
