void uuid_copy (long dest, long src)
{
 long i;
 
 for (i = 0; i < 16; i++)
 {
  dest[i] = src[i];
 }
}
