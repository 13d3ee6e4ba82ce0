"""init ledger

Revision ID: 5c2e8a41d7b3
Revises: 
Create Date: 2024-11-04 18:12:40.118302

"""
from typing import Sequence, Union

from alembic import op
import sqlalchemy as sa


# revision identifiers, used by Alembic.
revision: str = '5c2e8a41d7b3'
down_revision: Union[str, None] = None
branch_labels: Union[str, Sequence[str], None] = None
depends_on: Union[str, Sequence[str], None] = None


def upgrade() -> None:
    # ### commands auto generated by Alembic - please adjust! ###
    op.create_table('channels',
    sa.Column('name', sa.String(length=64), nullable=False),
    sa.Column('s_size', sa.Integer(), nullable=False),
    sa.Column('x_size', sa.Integer(), nullable=False),
    sa.Column('y_size', sa.Integer(), nullable=False),
    sa.Column('z_size', sa.Integer(), nullable=False),
    sa.Column('config_hash', sa.String(length=64), nullable=False),
    sa.Column('body', sa.JSON(), nullable=False),
    sa.Column('id', sa.Integer(), nullable=False),
    sa.Column('created', sa.DateTime(), nullable=False),
    sa.Column('updated', sa.DateTime(), nullable=True),
    sa.PrimaryKeyConstraint('id'),
    sa.UniqueConstraint('config_hash')
    )
    op.create_table('runs',
    sa.Column('command', sa.String(length=32), nullable=False),
    sa.Column('bound', sa.String(length=32), nullable=True),
    sa.Column('objective', sa.String(length=32), nullable=True),
    sa.Column('seed', sa.Integer(), nullable=False),
    sa.Column('config_hash', sa.String(length=64), nullable=False),
    sa.Column('version', sa.String(length=16), nullable=False),
    sa.Column('argv', sa.String(length=255), nullable=True),
    sa.Column('sm_endpoint', sa.Float(), nullable=True),
    sa.Column('sk_endpoint', sa.Float(), nullable=True),
    sa.Column('value', sa.Float(), nullable=True),
    sa.Column('signed', sa.Float(), nullable=True),
    sa.Column('hull', sa.Boolean(), nullable=False),
    sa.Column('channel_id', sa.Integer(), nullable=True),
    sa.Column('id', sa.Integer(), nullable=False),
    sa.Column('created', sa.DateTime(), nullable=False),
    sa.Column('updated', sa.DateTime(), nullable=True),
    sa.ForeignKeyConstraint(['channel_id'], ['channels.id'], ),
    sa.PrimaryKeyConstraint('id')
    )
    op.create_index(op.f('ix_runs_config_hash'), 'runs', ['config_hash'], unique=False)
    op.create_table('vertices',
    sa.Column('run_id', sa.Integer(), nullable=False),
    sa.Column('position', sa.Integer(), nullable=False),
    sa.Column('r_m', sa.Float(), nullable=False),
    sa.Column('r_k', sa.Float(), nullable=False),
    sa.Column('provenance_id', sa.String(length=64), nullable=False),
    sa.Column('design', sa.JSON(), nullable=True),
    sa.Column('id', sa.Integer(), nullable=False),
    sa.Column('created', sa.DateTime(), nullable=False),
    sa.Column('updated', sa.DateTime(), nullable=True),
    sa.ForeignKeyConstraint(['run_id'], ['runs.id'], ),
    sa.PrimaryKeyConstraint('id')
    )
    op.create_table('simulations',
    sa.Column('run_id', sa.Integer(), nullable=False),
    sa.Column('mode', sa.String(length=16), nullable=False),
    sa.Column('n', sa.Integer(), nullable=False),
    sa.Column('r1', sa.Float(), nullable=False),
    sa.Column('r2', sa.Float(), nullable=False),
    sa.Column('rk', sa.Float(), nullable=False),
    sa.Column('rm', sa.Float(), nullable=False),
    sa.Column('error_prob', sa.Float(), nullable=False),
    sa.Column('key_tv', sa.Float(), nullable=False),
    sa.Column('leakage_bits', sa.Float(), nullable=True),
    sa.Column('semantic_leakage_bits', sa.Float(), nullable=True),
    sa.Column('covering_div_bits', sa.Float(), nullable=True),
    sa.Column('trials', sa.Integer(), nullable=False),
    sa.Column('metrics', sa.JSON(), nullable=True),
    sa.Column('id', sa.Integer(), nullable=False),
    sa.Column('created', sa.DateTime(), nullable=False),
    sa.Column('updated', sa.DateTime(), nullable=True),
    sa.ForeignKeyConstraint(['run_id'], ['runs.id'], ),
    sa.PrimaryKeyConstraint('id')
    )
    # ### end Alembic commands ###


def downgrade() -> None:
    # ### commands auto generated by Alembic - please adjust! ###
    op.drop_table('simulations')
    op.drop_table('vertices')
    op.drop_index(op.f('ix_runs_config_hash'), table_name='runs')
    op.drop_table('runs')
    op.drop_table('channels')
    # ### end Alembic commands ###
