from fairpart.fairness.notions import (
    FairnessNotion,
    ENVY_NOTIONS,
    SHARE_NOTIONS,
    ALL_NOTIONS,
    IMPLICATIONS,
    implications_for,
)
from fairpart.fairness.shares import (
    prop_share,
    mms_share_binary,
    mms_share_binary_sized,
    mms_share_exact,
    ShareTable,
)
from fairpart.fairness.counts import envy_target, binary_agent_fair
from fairpart.fairness.audit import (
    envious,
    is_fair,
    check_partition,
    AuditReport,
    EnvyWitness,
    ShareWitness,
    Verdict,
)
