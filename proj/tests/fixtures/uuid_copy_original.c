void uuid_copy (long param_1,long param_2)

{
 long lVar1;
 
 lVar1 = 0;
 do {
 *(undefined *) (param_1 + lVar1) = *(undefined *)(param_2 + lVar1);
  lVar1 = lVar1 + 1;
 } while (lVar1 != 0x10);
 return;
}
