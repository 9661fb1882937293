// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace metamaint {

// Every status a transaction, handler, query or tool step can end in.
// Handler failures travel as values inside receipts; the rest are thrown
// as metamaint::Error.
enum class ErrorCode : std::uint8_t {
  Ok = 0,
  // ledger
  SenderMismatch,
  InvalidSignature,
  BadNonce,
  NotProposer,
  BadParent,
  BadProposer,
  InvalidTxInBlock,
  ScenarioOutOfRange,
  ConfigError,
  // contracts
  SchemaError,
  UnknownDestination,
  UnknownContract,
  UnknownSelector,
  DepthExceeded,
  InsufficientFunds,
  // release protocol / verification
  ParseError,
  NotOwner,
  NonMonotonicVersion,
  DuplicateVersion,
  UnknownVersion,
  LicenseIncompatible,
  RuleViolation,
  DigestMismatch,
  NoAuthorization,
  UnknownUpstream,
  UnknownLicense,
  // issues
  UnknownRelease,
  BadRange,
  NotAuthorized,
  AlreadyResolved,
  // governance
  NotMember,
  WindowClosed,
  UnknownProposal,
  // provenance / cli
  UnknownIssue,
  UnknownQuery,
  MissingDump,
  IoError,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  explicit Error(ErrorCode code)
      : std::runtime_error(std::string(error_name(code))), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace metamaint
